#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ulab {

/// Variable assignment for bracket expressions; both variables are integers.
using Assignment = std::map<char, std::int64_t>;  // keys 'n' and 'h'

/// Expression tree over real constants, the variables n and h, binary + - *,
/// and the unary floor and fractional-part operators.  Evaluation follows
/// IEEE double semantics with floor rounding toward negative infinity.
/// Text form is a prefix s-expression, e.g.
///   (mul (const 0.3) (var n) (floor (mul (const 0.7) (var n))))
class BracketExpr {
 public:
  static BracketExpr constant(double c);
  static BracketExpr var(char name);  // 'n' or 'h'
  static BracketExpr add(BracketExpr a, BracketExpr b);
  static BracketExpr sub(BracketExpr a, BracketExpr b);
  static BracketExpr mul(BracketExpr a, BracketExpr b);
  static BracketExpr floor_of(BracketExpr a);
  static BracketExpr frac_of(BracketExpr a);

  static BracketExpr parse(std::string_view text);
  std::string str() const;

  std::size_t node_count() const;
  std::set<char> variables() const;

  /// Plain evaluation in doubles; throws InputError on unassigned variables.
  double eval(const Assignment& a) const;
  /// Evaluation reduced mod 1 into [0, 1).
  double eval_mod1(const Assignment& a) const;
  /// Smallest distance of any floor/frac argument to an integer during
  /// evaluation; used to resample assignments that sit on a discontinuity.
  double min_floor_gap(const Assignment& a) const;

  struct Node;  // opaque; defined in the implementation

 private:
  explicit BracketExpr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

struct IdentityCheckConfig {
  std::int64_t n_min = 1;
  std::int64_t n_max = 1000;
  double floor_guard = 1e-6;  // resample if a floor argument is this close to Z
  int max_resample = 64;
};

struct IdentityReport {
  double max_defect = 0.0;                // circle distance of (lhs - rhs) from 0
  std::optional<Assignment> worst;        // assignment attaining the max, if any sample ran
  std::size_t samples_used = 0;
};

/// Samples integer assignments for the shared variable set and reports the
/// worst phase defect between the two expressions.  Both sides must use the
/// same variables.
IdentityReport check_phase_identity(const BracketExpr& lhs, const BracketExpr& rhs,
                                    std::size_t samples, std::uint64_t seed,
                                    const IdentityCheckConfig& cfg = {});

struct SignOracleResult {
  int sign = 0;        // the epsilon in  a n [b n] = -b n [a n] + a b n^2 + eps {a n}{b n}
  double residual = 0.0;
};

/// Determines by brute force which sign makes the bracket-quadratic
/// reflection identity hold mod 1, sampling random (alpha, beta) away from
/// degeneracies.  Throws InternalError if neither sign reaches 1e-9.
SignOracleResult alphab_sign_oracle(std::size_t samples = 1000, std::uint64_t seed = 1);

/// The reflection identity as expression trees for fixed (alpha, beta):
/// lhs = alpha n floor(beta n), rhs with the given sign on {alpha n}{beta n}.
BracketExpr alphab_identity_lhs(double alpha, double beta);
BracketExpr alphab_identity_rhs(double alpha, double beta, int sign, bool include_product_term = true);

}  // namespace ulab
