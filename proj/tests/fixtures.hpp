#pragma once

#include "regen/code_model.hpp"

namespace fixtures {

// Four nodes each holding the same single symbol; params claim k = d = 3 so
// the code exercises (N,k,d) = (4,3,3) checks with lots of slack.
inline regen::RegenCode degenerate_replication_433() {
    using namespace regen;
    CodeParams p{4, 3, 3, 1, 1, 2};
    Matrix gen(Field(2), 1, 4);
    for (int c = 0; c < 4; ++c) gen.set(0, c, 1);
    Matrix one(Field(2), 1, 1);
    one.set(0, 0, 1);
    std::map<std::pair<int, int>, Matrix> repair;
    for (int i = 1; i <= 4; ++i)
        for (int j = 1; j <= 4; ++j)
            if (i != j) repair.emplace(std::make_pair(i, j), one);
    return RegenCode(p, std::move(gen), std::move(repair));
}

}  // namespace fixtures
