#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lassopath/linalg.hpp"

namespace lassopath {

/// Absolute tolerance on the witness quantities; the condition is a pair of
/// open inequations, so a numerical check needs a band.
inline constexpr double kGpcTol = 1e-9;

/// Near-misses above kGpcTol but below this level are reported as warnings.
inline constexpr double kGpcNearTol = 1e-6;

/// Two distinct supports with sign vectors attached to each.
struct SupportSignPair {
  std::vector<int> s;        // sorted, 0-based
  std::vector<int> s_prime;  // sorted, 0-based, different from s
  Eigen::VectorXd eps_s;        // entries in {-1, +1}
  Eigen::VectorXd eps_s_prime;  // entries in {-1, +1}
};

/// Witness quantities from the uniqueness analysis:
///   zeta        = e^t (X_S^t X_S)^{-1} e - e'^t (X_S'^t X_S')^{-1} e'
///   eta_norm_sq = || X_S (X_S^t X_S)^{-1} e - X_S' (X_S'^t X_S')^{-1} e' ||^2
///   cross_term  = e^t (X_S^t X_S)^{-1} (X_S^t X_S') (X_S'^t X_S')^{-1} e'
/// For nested supports whose sign vectors agree on the common indices,
/// eta_norm_sq = |zeta| holds identically for every matrix (no two distinct
/// minimizers can live on nested supports, so the pair carries no
/// information); such pairs are marked structural and excluded from the
/// equality flag.
struct PairWitness {
  double zeta = 0.0;
  double eta_norm_sq = 0.0;
  double cross_term = 0.0;
  bool structural_identity = false;
};

enum class GpcInequation { kZetaZero, kEtaEquality };

struct GpcViolation {
  SupportSignPair pair;
  GpcInequation inequation = GpcInequation::kZetaZero;
  double gap = 0.0;
};

struct PairCheckResult {
  PairWitness witness;
  bool zeta_zero = false;
  bool eta_equality = false;
  bool near_miss = false;
};

/// Checks one pair. Both restricted matrices must be full rank (the caller
/// is expected to pre-filter; RankDeficient propagates otherwise).
PairCheckResult pair_check(const DesignMatrix& design,
                           const SupportSignPair& pair, double tol = kGpcTol);

/// Number of (support, sign) items with 1 <= |S| <= max_size, i.e.
/// sum over k of C(p,k) * 2^k. Saturates at uint64 max.
std::uint64_t count_support_sign_items(int p, int max_size);

/// Number of unordered item pairs with distinct supports. Saturates.
std::uint64_t count_support_sign_pairs(int p, int max_size);

/// Visits items in deterministic order: supports by size then
/// lexicographically, sign vectors by binary counter (bit set = -1).
void enumerate_support_sign_items(
    int p, int max_size,
    const std::function<void(const std::vector<int>&, const Eigen::VectorXd&)>&
        visit);

enum class GpcMode { kExhaustive, kSampled };

struct GpcOptions {
  std::uint64_t budget = 10'000'000;  // pair budget before sampling kicks in
  std::uint64_t seed = 0;
  bool force_exhaustive = false;  // throw CombinatorialOverflow over budget
  int jobs = 1;
  double tolerance = kGpcTol;
};

struct GpcReport {
  GpcMode mode = GpcMode::kExhaustive;
  std::uint64_t seed = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t skipped_rank_deficient = 0;
  std::vector<GpcViolation> violations;
  std::vector<GpcViolation> near_violations;
  double tolerance = kGpcTol;
};

/// Checks the general position condition over all support pairs of size up
/// to min(n, p). Runs exhaustively when the pair count fits the budget,
/// otherwise draws `budget` pairs uniformly (reproducible for a given seed).
/// Pairs touching a rank-deficient support are skipped and counted.
GpcReport check_gpc(const DesignMatrix& design, const GpcOptions& options = {});

/// {mode, pairs_checked, skipped_rank_deficient, violations, near_violations,
/// tolerance} with 1-based support indices.
std::string gpc_report_json(const GpcReport& report);

}  // namespace lassopath
