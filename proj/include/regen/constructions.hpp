#pragma once

#include <optional>

#include "regen/code_model.hpp"
#include "regen/entropy.hpp"

namespace regen {

// Concrete code families. Every constructor returns a code that passes
// verify() for its declared parameters; field-size preconditions are
// enforced here rather than discovered at verification time.

// One layer per w-subset of [n]; each layer encodes w-1 symbols with a
// single-parity code and stores one coded symbol per member node.
// Params: N=n, k=d=n-1, alpha=C(n-1,w-1), beta=C(n-2,w-2), B=(w-1)C(n,w).
// Repair of j: each helper sends its symbol of every layer containing both.
RegenCode layered(int n, int w, int q = 2);

// Pair-symbol storage behind an outer MDS code: C(n,2) symbols theta_ij,
// node i stores those with index i, helper i hands j their shared symbol.
// Params: k as given, d=n-1, alpha=n-1, beta=1, B=k(n-1)-C(k,2).
// Default q is the smallest prime admitting C(n,2) evaluation points.
RegenCode rbt_mbr(int n, int k, std::optional<int> q = std::nullopt);

// [n,k] MDS code with alpha=beta=1; repair decodes from any d >= k helpers,
// each sending its full symbol. Default q is the smallest prime >= n.
RegenCode mds_msr(int n, int k, int d, std::optional<int> q = std::nullopt);

// Single symbol copied to every node; k=d=alpha=beta=1, B=1.
RegenCode replication(int n, int q = 2);

// `count` random subspaces of GF(q)^ambient_dim named W1..Wcount, each the
// span of a random number of random vectors. Deterministic in the seed.
VariableSystem random_subspace_system(unsigned rng_seed, int ambient_dim, int count, int q);

struct ConstructionSpec {
    enum class Family { Layered, RbtMbr, MdsMsr, Replication };
    Family family;
    int n = 0;
    int w = 0;
    int k = 0;
    int d = 0;
    std::optional<int> q;

    RegenCode build() const;
};

}  // namespace regen
