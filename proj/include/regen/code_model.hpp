#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "regen/entropy.hpp"
#include "regen/field_linalg.hpp"

namespace regen {

/// Raised when a code file cannot be read back as a valid code.
class CodeFormatError : public std::runtime_error {
public:
    explicit CodeFormatError(const std::string& what) : std::runtime_error(what) {}
};

struct CodeParams {
    int N = 0;      // number of storage nodes
    int k = 0;      // any k nodes recover the file
    int d = 0;      // helpers contacted during a repair
    int alpha = 0;  // symbols stored per node
    int beta = 0;   // symbols sent per helper
    std::int64_t q = 2;

    /// Throws std::invalid_argument unless 1 <= k <= N, k <= d <= N-1,
    /// alpha, beta >= 1 and q is prime.
    void validate() const;
    bool operator==(const CodeParams&) const = default;
};

/// A linear exact-repair storage code held as a B x N*alpha generator matrix
/// over GF(q), split into N blocks of alpha columns, plus one alpha x beta
/// coefficient matrix per ordered node pair describing what a helper sends.
///
/// The stored object fixes the subspaces of the entropy dictionary: the whole
/// file M is the full column space, node j holds the column space W_j of block
/// j, and the transfer from i to j spans the columns of block_i * coeffs(i,j),
/// which keeps every transfer inside W_i by construction.
class RegenCode {
public:
    RegenCode(CodeParams params, Matrix generator,
              std::map<std::pair<int, int>, Matrix> repair_coeffs);

    const CodeParams& params() const { return params_; }
    std::int64_t file_size() const { return static_cast<std::int64_t>(generator_.rows()); }
    const Matrix& generator() const { return generator_; }
    const Field& field() const { return generator_.field(); }
    const Matrix& repair_coeffs(int from, int to) const;

    /// Columns alpha*(j-1) .. alpha*j-1 of the generator (1-based j).
    Matrix node_block(int j) const;
    Subspace node_space(int j) const;
    Subspace helper_space(int from, int to) const;

    /// Joint entropy of a set of nodes; the full node set gives file_size().
    std::int64_t b_of(const std::vector<int>& nodes) const;

    VariableSystem to_variable_system() const;

private:
    CodeParams params_;
    Matrix generator_;
    std::map<std::pair<int, int>, Matrix> repair_;
};

struct VerificationReport {
    std::vector<bool> storage_ok;   // per node: dim W_j <= alpha
    std::vector<bool> exact_alpha;  // per node: dim W_j == alpha
    std::vector<std::pair<std::vector<int>, bool>> access;        // per k-subset
    std::vector<std::tuple<int, std::vector<int>, bool>> repair;  // per (node, d-subset)
    bool sampled = false;

    /// Pass means every access and repair check succeeded.
    bool pass() const;
};

struct VerifyOptions {
    bool sample = false;  // spot-check a bounded number of subsets instead of all
    int sample_count = 200;
    unsigned seed = 1;
};

/// Checks the two code axioms on a concrete instance: every k-subset of nodes
/// spans the whole file, and for every node j, every d-subset of the other
/// nodes repairs W_j from its transfer subspaces. Failures are reported, not
/// thrown.
VerificationReport verify(const RegenCode& code, const VerifyOptions& opts = {});

RegenCode load_code(const std::string& path);
void save_code(const RegenCode& code, const std::string& path);

/// In-memory forms of the on-disk format, used by save/load and the CLI.
std::string encode_code(const RegenCode& code);
RegenCode decode_code(const std::string& text);

}  // namespace regen
