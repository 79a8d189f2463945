#include "regen/code_model.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace regen {

using ordered_json = nlohmann::ordered_json;

void CodeParams::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    if (N < 1) fail("N must be >= 1");
    if (k < 1 || k > N) fail("k must satisfy 1 <= k <= N");
    if (d < k || d > N - 1) fail("d must satisfy k <= d <= N-1");
    if (alpha < 1) fail("alpha must be >= 1");
    if (beta < 1) fail("beta must be >= 1");
    if (!is_prime(q)) fail("q must be prime");
}

RegenCode::RegenCode(CodeParams params, Matrix generator,
                     std::map<std::pair<int, int>, Matrix> repair_coeffs)
    : params_(params), generator_(std::move(generator)), repair_(std::move(repair_coeffs)) {
    params_.validate();
    if (generator_.field().p() != params_.q)
        throw std::invalid_argument("generator field does not match declared q");
    std::size_t expect_cols = static_cast<std::size_t>(params_.N) * params_.alpha;
    if (generator_.cols() != expect_cols)
        throw std::invalid_argument("generator must have N*alpha = " + std::to_string(expect_cols) +
                                    " columns, got " + std::to_string(generator_.cols()));
    std::size_t r = rank(generator_);
    if (r != generator_.rows())
        throw std::invalid_argument("generator rank " + std::to_string(r) +
                                    " is less than its row count " +
                                    std::to_string(generator_.rows()) +
                                    "; rows must be independent");
    for (int i = 1; i <= params_.N; ++i)
        for (int j = 1; j <= params_.N; ++j) {
            if (i == j) continue;
            auto it = repair_.find({i, j});
            if (it == repair_.end())
                throw std::invalid_argument("missing repair entry for pair (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
            const Matrix& c = it->second;
            if (c.field().p() != params_.q)
                throw std::invalid_argument("repair coefficients field mismatch for pair (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            if (c.rows() != static_cast<std::size_t>(params_.alpha) ||
                c.cols() != static_cast<std::size_t>(params_.beta))
                throw std::invalid_argument("repair coefficients for pair (" + std::to_string(i) +
                                            "," + std::to_string(j) + ") must be alpha x beta");
        }
}

const Matrix& RegenCode::repair_coeffs(int from, int to) const {
    auto it = repair_.find({from, to});
    if (it == repair_.end())
        throw std::invalid_argument("missing repair entry for pair (" + std::to_string(from) + "," +
                                    std::to_string(to) + ")");
    return it->second;
}

Matrix RegenCode::node_block(int j) const {
    if (j < 1 || j > params_.N) throw std::invalid_argument("node index out of range");
    std::size_t a = static_cast<std::size_t>(params_.alpha);
    Matrix out(generator_.field(), generator_.rows(), a);
    for (std::size_t r = 0; r < generator_.rows(); ++r)
        for (std::size_t c = 0; c < a; ++c)
            out.set(r, c, generator_.at(r, (static_cast<std::size_t>(j) - 1) * a + c));
    return out;
}

Subspace RegenCode::node_space(int j) const { return Subspace::from_columns(node_block(j)); }

Subspace RegenCode::helper_space(int from, int to) const {
    return Subspace::from_columns(node_block(from) * repair_coeffs(from, to));
}

std::int64_t RegenCode::b_of(const std::vector<int>& nodes) const {
    if (nodes.empty()) return 0;
    Matrix acc = node_block(nodes.front());
    for (std::size_t i = 1; i < nodes.size(); ++i) acc = hconcat(acc, node_block(nodes[i]));
    return static_cast<std::int64_t>(rank(acc));
}

VariableSystem RegenCode::to_variable_system() const {
    VariableSystem sys(generator_.field(), generator_.rows());
    sys.add_variable(VarName::whole(), Subspace::full(generator_.field(), generator_.rows()));
    for (int j = 1; j <= params_.N; ++j) sys.add_variable(VarName::node(j), node_space(j));
    for (int i = 1; i <= params_.N; ++i)
        for (int j = 1; j <= params_.N; ++j)
            if (i != j) sys.add_variable(VarName::helper(i, j), helper_space(i, j));
    return sys;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int r, const std::vector<int>& pool) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(r);
    for (int i = 0; i < r; ++i) idx[i] = i;
    if (r == 0) {
        out.push_back({});
        return out;
    }
    if (r > n) return out;
    while (true) {
        std::vector<int> cur(r);
        for (int i = 0; i < r; ++i) cur[i] = pool[idx[i]];
        out.push_back(cur);
        int i = r - 1;
        while (i >= 0 && idx[i] == n - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int t = i + 1; t < r; ++t) idx[t] = idx[t - 1] + 1;
    }
    return out;
}

template <typename T>
std::vector<T> maybe_sample(std::vector<T> all, const VerifyOptions& opts) {
    if (!opts.sample || static_cast<int>(all.size()) <= opts.sample_count) return all;
    std::mt19937 rng(opts.seed);
    std::vector<T> out;
    out.reserve(opts.sample_count);
    for (int t = 0; t < opts.sample_count; ++t) out.push_back(all[rng() % all.size()]);
    return out;
}

}  // namespace

bool VerificationReport::pass() const {
    for (const auto& [subset, ok] : access)
        if (!ok) return false;
    for (const auto& [node, subset, ok] : repair)
        if (!ok) return false;
    return true;
}

VerificationReport verify(const RegenCode& code, const VerifyOptions& opts) {
    const CodeParams& p = code.params();
    VerificationReport rep;

    for (int j = 1; j <= p.N; ++j) {
        std::size_t dim = code.node_space(j).dim();
        rep.storage_ok.push_back(dim <= static_cast<std::size_t>(p.alpha));
        rep.exact_alpha.push_back(dim == static_cast<std::size_t>(p.alpha));
    }

    std::vector<int> all_nodes(p.N);
    for (int j = 1; j <= p.N; ++j) all_nodes[j - 1] = j;

    auto access_sets = maybe_sample(subsets_of_size(p.N, p.k, all_nodes), opts);
    for (const auto& subset : access_sets)
        rep.access.emplace_back(subset, code.b_of(subset) == code.file_size());

    std::vector<std::pair<int, std::vector<int>>> repair_cases;
    for (int j = 1; j <= p.N; ++j) {
        std::vector<int> others;
        for (int i = 1; i <= p.N; ++i)
            if (i != j) others.push_back(i);
        for (auto& subset : subsets_of_size(p.N - 1, p.d, others))
            repair_cases.emplace_back(j, std::move(subset));
    }
    for (const auto& [j, helpers] : maybe_sample(std::move(repair_cases), opts)) {
        Subspace acc(code.field(), static_cast<std::size_t>(code.file_size()));
        for (int i : helpers) acc = span_sum(acc, code.helper_space(i, j));
        rep.repair.emplace_back(j, helpers, acc.contains(code.node_space(j)));
    }

    rep.sampled = opts.sample;
    return rep;
}

namespace {

Matrix matrix_from_json_rows(const Field& f, const ordered_json& jrows, std::size_t rows,
                             std::size_t cols, const std::string& what) {
    if (!jrows.is_array() || jrows.size() != rows)
        throw CodeFormatError(what + " must be an array of " + std::to_string(rows) + " rows");
    Matrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const auto& row = jrows[r];
        if (!row.is_array() || row.size() != cols)
            throw CodeFormatError(what + " row " + std::to_string(r) + " must have " +
                                  std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number_integer())
                throw CodeFormatError(what + " entries must be integers");
            std::int64_t v = row[c].get<std::int64_t>();
            if (v < 0 || v >= f.p())
                throw CodeFormatError(what + " entries must lie in [0, q)");
            m.set(r, c, v);
        }
    }
    return m;
}

}  // namespace

std::string encode_code(const RegenCode& code) {
    const CodeParams& p = code.params();
    ordered_json j;
    j["format_version"] = 1;
    j["q"] = p.q;
    j["params"] = {{"N", p.N}, {"k", p.k}, {"d", p.d}, {"alpha", p.alpha}, {"beta", p.beta}};
    j["B"] = code.file_size();
    ordered_json gen = ordered_json::array();
    for (std::size_t r = 0; r < code.generator().rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < code.generator().cols(); ++c)
            row.push_back(code.generator().at(r, c));
        gen.push_back(std::move(row));
    }
    j["generator"] = std::move(gen);
    ordered_json rep = ordered_json::array();
    for (int from = 1; from <= p.N; ++from)
        for (int to = 1; to <= p.N; ++to) {
            if (from == to) continue;
            const Matrix& c = code.repair_coeffs(from, to);
            ordered_json cols = ordered_json::array();
            for (std::size_t col = 0; col < c.cols(); ++col) {
                ordered_json colv = ordered_json::array();
                for (std::size_t row = 0; row < c.rows(); ++row) colv.push_back(c.at(row, col));
                cols.push_back(std::move(colv));
            }
            rep.push_back({{"from", from}, {"to", to}, {"coeffs", std::move(cols)}});
        }
    j["repair"] = std::move(rep);
    return j.dump(2) + "\n";
}

RegenCode decode_code(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw CodeFormatError(std::string("malformed code file: ") + e.what());
    }
    try {
        if (!j.is_object()) throw CodeFormatError("code file must be a JSON object");
        if (j.value("format_version", 0) != 1)
            throw CodeFormatError("unsupported format_version");
        std::int64_t q = j.at("q").get<std::int64_t>();
        if (!is_prime(q)) throw CodeFormatError("q must be prime");
        const auto& pj = j.at("params");
        CodeParams p;
        p.N = pj.at("N").get<int>();
        p.k = pj.at("k").get<int>();
        p.d = pj.at("d").get<int>();
        p.alpha = pj.at("alpha").get<int>();
        p.beta = pj.at("beta").get<int>();
        p.q = q;
        std::int64_t B = j.at("B").get<std::int64_t>();
        if (B < 1) throw CodeFormatError("B must be >= 1");
        Field f(q);
        Matrix gen = matrix_from_json_rows(f, j.at("generator"), static_cast<std::size_t>(B),
                                           static_cast<std::size_t>(p.N) * p.alpha, "generator");
        std::map<std::pair<int, int>, Matrix> coeffs;
        const auto& repj = j.at("repair");
        if (!repj.is_array()) throw CodeFormatError("repair must be an array");
        for (const auto& entry : repj) {
            int from = entry.at("from").get<int>();
            int to = entry.at("to").get<int>();
            if (from < 1 || from > p.N || to < 1 || to > p.N || from == to)
                throw CodeFormatError("repair entry has invalid pair (" + std::to_string(from) +
                                      "," + std::to_string(to) + ")");
            // columns on disk; transpose into the alpha x beta coefficient matrix
            const auto& cj = entry.at("coeffs");
            Matrix cols = matrix_from_json_rows(f, cj, static_cast<std::size_t>(p.beta),
                                                static_cast<std::size_t>(p.alpha),
                                                "repair coeffs for pair (" + std::to_string(from) +
                                                    "," + std::to_string(to) + ")");
            if (!coeffs.emplace(std::pair{from, to}, cols.transpose()).second)
                throw CodeFormatError("duplicate repair entry for pair (" + std::to_string(from) +
                                      "," + std::to_string(to) + ")");
        }
        try {
            return RegenCode(p, std::move(gen), std::move(coeffs));
        } catch (const std::invalid_argument& e) {
            throw CodeFormatError(e.what());
        }
    } catch (const ordered_json::exception& e) {
        throw CodeFormatError(std::string("malformed code file: ") + e.what());
    }
}

RegenCode load_code(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CodeFormatError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return decode_code(buf.str());
}

void save_code(const RegenCode& code, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CodeFormatError("cannot open " + path + " for writing");
    out << encode_code(code);
    if (!out) throw CodeFormatError("failed writing " + path);
}

}  // namespace regen
