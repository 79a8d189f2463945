#include "regen/constructions.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace regen {

namespace {

long long comb(int n, int r) {
    if (r < 0 || r > n) return 0;
    long long out = 1;
    for (int i = 0; i < r; ++i) out = out * (n - i) / (i + 1);
    return out;
}

// w-subsets of {1..n} in lexicographic order
std::vector<std::vector<int>> subsets(int n, int w) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(w);
    for (int i = 0; i < w; ++i) cur[i] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = w - 1;
        while (i >= 0 && cur[i] == n - w + i + 1) --i;
        if (i < 0) break;
        ++cur[i];
        for (int t = i + 1; t < w; ++t) cur[t] = cur[t - 1] + 1;
    }
    return out;
}

std::map<std::pair<int, int>, Matrix> uniform_repair(int n, const Matrix& coeff) {
    std::map<std::pair<int, int>, Matrix> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) out.emplace(std::make_pair(i, j), coeff);
    return out;
}

}  // namespace

RegenCode layered(int n, int w, int q) {
    if (w < 2 || w > n) throw std::invalid_argument("layered needs 2 <= w <= n");
    Field f(q);

    std::vector<std::vector<int>> layers = subsets(n, w);
    int L = static_cast<int>(layers.size());
    int alpha = static_cast<int>(comb(n - 1, w - 1));
    int beta = static_cast<int>(comb(n - 2, w - 2));
    int B = (w - 1) * L;

    // node_layers[j] lists (layer index, position of j in that layer)
    std::vector<std::vector<std::pair<int, int>>> node_layers(n + 1);
    for (int t = 0; t < L; ++t)
        for (int pos = 0; pos < w; ++pos) node_layers[layers[t][pos]].emplace_back(t, pos);

    Matrix gen(f, B, static_cast<std::size_t>(n) * alpha);
    for (int j = 1; j <= n; ++j)
        for (int c = 0; c < alpha; ++c) {
            auto [t, pos] = node_layers[j][c];
            std::size_t col = static_cast<std::size_t>(j - 1) * alpha + c;
            std::size_t base = static_cast<std::size_t>(t) * (w - 1);
            if (pos < w - 1)
                gen.set(base + pos, col, 1);
            else
                for (int r = 0; r < w - 1; ++r) gen.set(base + r, col, 1);
        }

    std::map<std::pair<int, int>, Matrix> repair;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            Matrix coeff(f, alpha, beta);
            int c = 0;
            for (int slot = 0; slot < alpha; ++slot) {
                const std::vector<int>& layer = layers[node_layers[i][slot].first];
                bool has_j = false;
                for (int m : layer) has_j = has_j || m == j;
                if (has_j) coeff.set(slot, c++, 1);
            }
            repair.emplace(std::make_pair(i, j), std::move(coeff));
        }

    CodeParams p{n, n - 1, n - 1, alpha, beta, q};
    return RegenCode(p, std::move(gen), std::move(repair));
}

RegenCode rbt_mbr(int n, int k, std::optional<int> q_opt) {
    if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("rbt_mbr needs 1 <= k <= n-1");
    long long pairs = comb(n, 2);
    int q = q_opt.value_or(static_cast<int>(next_prime(static_cast<int>(pairs))));
    if (q < pairs)
        throw std::invalid_argument("q = " + std::to_string(q) + " is too small; need q >= " +
                                    std::to_string(pairs) + " evaluation points");
    Field f(q);

    long long B = static_cast<long long>(k) * (n - 1) - comb(k, 2);

    // pair_index[{i,j}] for i < j, lexicographic
    std::map<std::pair<int, int>, int> pair_index;
    int t = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) pair_index[{i, j}] = t++;

    // column for pair t is (1, t, t^2, ...); any B columns are independent
    Matrix vand(f, static_cast<std::size_t>(B), static_cast<std::size_t>(pairs));
    for (int c = 0; c < pairs; ++c) {
        int pw = 1;
        for (long long r = 0; r < B; ++r) {
            vand.set(static_cast<std::size_t>(r), c, pw);
            pw = f.mul(pw, f.reduce(c));
        }
    }

    int alpha = n - 1;
    Matrix gen(f, static_cast<std::size_t>(B), static_cast<std::size_t>(n) * alpha);
    for (int i = 1; i <= n; ++i) {
        int slot = 0;
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            int pc = pair_index[{std::min(i, j), std::max(i, j)}];
            for (long long r = 0; r < B; ++r)
                gen.set(static_cast<std::size_t>(r),
                        static_cast<std::size_t>(i - 1) * alpha + slot,
                        vand.at(static_cast<std::size_t>(r), pc));
            ++slot;
        }
    }

    std::map<std::pair<int, int>, Matrix> repair;
    for (int i = 1; i <= n; ++i) {
        int slot = 0;
        for (int j = 1; j <= n; ++j) {
            if (j == i) continue;
            Matrix coeff(f, alpha, 1);
            coeff.set(slot, 0, 1);
            repair.emplace(std::make_pair(i, j), std::move(coeff));
            ++slot;
        }
    }

    CodeParams p{n, k, n - 1, alpha, 1, q};
    return RegenCode(p, std::move(gen), std::move(repair));
}

RegenCode mds_msr(int n, int k, int d, std::optional<int> q_opt) {
    if (k < 1 || k > d || d > n - 1) throw std::invalid_argument("mds_msr needs 1 <= k <= d <= n-1");
    int q = q_opt.value_or(static_cast<int>(next_prime(n)));
    // k = 1 keeps only the constant row, where repeated points are harmless
    if (k >= 2 && q < n)
        throw std::invalid_argument("q = " + std::to_string(q) + " is too small; need q >= " +
                                    std::to_string(n) + " evaluation points");
    Field f(q);

    Matrix gen(f, k, n);
    for (int c = 0; c < n; ++c) {
        int pw = 1;
        for (int r = 0; r < k; ++r) {
            gen.set(r, c, pw);
            pw = f.mul(pw, f.reduce(c));
        }
    }

    Matrix one(f, 1, 1);
    one.set(0, 0, 1);
    CodeParams p{n, k, d, 1, 1, q};
    return RegenCode(p, std::move(gen), uniform_repair(n, one));
}

RegenCode replication(int n, int q) {
    if (n < 2) throw std::invalid_argument("replication needs n >= 2");
    Field f(q);
    Matrix gen(f, 1, n);
    for (int c = 0; c < n; ++c) gen.set(0, c, 1);
    Matrix one(f, 1, 1);
    one.set(0, 0, 1);
    CodeParams p{n, 1, 1, 1, 1, q};
    return RegenCode(p, std::move(gen), uniform_repair(n, one));
}

VariableSystem random_subspace_system(unsigned rng_seed, int ambient_dim, int count, int q) {
    if (ambient_dim < 1) throw std::invalid_argument("ambient_dim must be >= 1");
    if (count < 0) throw std::invalid_argument("count must be >= 0");
    Field f(q);
    std::mt19937 rng(rng_seed);
    VariableSystem sys(f, static_cast<std::size_t>(ambient_dim));
    for (int v = 1; v <= count; ++v) {
        std::size_t ncols = rng() % (static_cast<unsigned>(ambient_dim) + 1);
        Matrix cols(f, static_cast<std::size_t>(ambient_dim), ncols);
        for (std::size_t r = 0; r < cols.rows(); ++r)
            for (std::size_t c = 0; c < ncols; ++c) cols.set(r, c, f.reduce(rng() % q));
        sys.add_variable(VarName::node(v), Subspace::from_columns(cols));
    }
    return sys;
}

RegenCode ConstructionSpec::build() const {
    switch (family) {
        case Family::Layered: return layered(n, w, q.value_or(2));
        case Family::RbtMbr: return rbt_mbr(n, k, q);
        case Family::MdsMsr: return mds_msr(n, k, d, q);
        case Family::Replication: return replication(n, q.value_or(2));
    }
    throw std::logic_error("unknown construction family");
}

}  // namespace regen
