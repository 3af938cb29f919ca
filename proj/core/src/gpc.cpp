#include "lassopath/gpc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include <json.hpp>

#include "lassopath/datagen.hpp"
#include "support_iter.hpp"

namespace lassopath {

namespace {

using u128 = unsigned __int128;

// All counts saturate: anything at or above this cap reports UINT64_MAX.
constexpr u128 kCountCap = u128(1) << 100;

u128 binomial_capped(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= static_cast<u128>(n - k + i);
    result /= static_cast<u128>(i);  // exact: prefix binomials are integers
    if (result >= kCountCap) return kCountCap;
  }
  return result;
}

u128 items_capped(int p, int max_size) {
  u128 total = 0;
  for (int k = 1; k <= max_size; ++k) {
    u128 term = binomial_capped(p, k);
    if (term >= kCountCap || k >= 64) return kCountCap;
    term <<= k;  // times 2^k sign vectors
    total += term;
    if (total >= kCountCap) return kCountCap;
  }
  return total;
}

u128 pairs_capped(int p, int max_size) {
  const u128 items = items_capped(p, max_size);
  if (items >= (u128(1) << 63)) return kCountCap;
  u128 same_support = 0;
  for (int k = 1; k <= max_size; ++k) {
    u128 term = binomial_capped(p, k);
    if (term >= kCountCap || 2 * k >= 64) return kCountCap;
    term <<= (2 * k);  // 4^k ordered same-support sign combinations
    same_support += term;
    if (same_support >= kCountCap) return kCountCap;
  }
  return (items * items - same_support) / 2;
}

std::uint64_t clamp_count(u128 value) {
  return value >= kCountCap ? UINT64_MAX : static_cast<std::uint64_t>(value);
}

Eigen::VectorXd signs_from_mask(std::uint64_t mask, int k) {
  Eigen::VectorXd signs(k);
  for (int i = 0; i < k; ++i) {
    signs(i) = (mask >> i) & 1 ? -1.0 : 1.0;
  }
  return signs;
}

// True when one support contains the other and the larger sign vector
// restricts to the smaller one; eta_norm_sq == |zeta| is then an algebraic
// identity carrying no information about the design.
bool nested_matching_signs(const std::vector<int>& s,
                           const Eigen::VectorXd& eps_s,
                           const std::vector<int>& s_prime,
                           const Eigen::VectorXd& eps_s_prime) {
  const auto contains = [](const std::vector<int>& big,
                           const Eigen::VectorXd& eps_big,
                           const std::vector<int>& small,
                           const Eigen::VectorXd& eps_small) {
    size_t bi = 0;
    for (size_t si = 0; si < small.size(); ++si) {
      while (bi < big.size() && big[bi] < small[si]) ++bi;
      if (bi == big.size() || big[bi] != small[si]) return false;
      if (eps_big(static_cast<Eigen::Index>(bi)) !=
          eps_small(static_cast<Eigen::Index>(si))) {
        return false;
      }
      ++bi;
    }
    return true;
  };
  if (s.size() <= s_prime.size() && contains(s_prime, eps_s_prime, s, eps_s)) {
    return true;
  }
  if (s_prime.size() <= s.size() && contains(s, eps_s, s_prime, eps_s_prime)) {
    return true;
  }
  return false;
}

struct ItemData {
  int support_id = 0;
  std::uint64_t mask = 0;
  double quad = 0.0;       // eps^t (X_S^t X_S)^{-1} eps
  Eigen::VectorXd image;   // X_S (X_S^t X_S)^{-1} eps
};

struct SupportData {
  std::vector<int> support;
  bool full_rank = false;
  std::optional<GramFactor> factor;
};

bool violation_less(const GpcViolation& a, const GpcViolation& b) {
  if (a.pair.s != b.pair.s) return a.pair.s < b.pair.s;
  if (a.pair.s_prime != b.pair.s_prime) return a.pair.s_prime < b.pair.s_prime;
  const auto key = [](const Eigen::VectorXd& v) {
    return std::vector<double>(v.data(), v.data() + v.size());
  };
  const auto ka = std::make_tuple(key(a.pair.eps_s), key(a.pair.eps_s_prime),
                                  static_cast<int>(a.inequation));
  const auto kb = std::make_tuple(key(b.pair.eps_s), key(b.pair.eps_s_prime),
                                  static_cast<int>(b.inequation));
  return ka < kb;
};

struct WitnessFlags {
  PairWitness witness;
  std::vector<std::pair<GpcInequation, double>> violations;
  std::vector<std::pair<GpcInequation, double>> near_misses;
};

WitnessFlags evaluate_witness(double quad_s, double quad_sp,
                              const Eigen::VectorXd& image_s,
                              const Eigen::VectorXd& image_sp,
                              bool structural, double tol) {
  WitnessFlags out;
  out.witness.zeta = quad_s - quad_sp;
  out.witness.eta_norm_sq = (image_s - image_sp).squaredNorm();
  out.witness.cross_term = image_s.dot(image_sp);
  out.witness.structural_identity = structural;

  const double zeta_gap = std::abs(out.witness.zeta);
  if (zeta_gap <= tol) {
    out.violations.emplace_back(GpcInequation::kZetaZero, out.witness.zeta);
  } else if (zeta_gap <= kGpcNearTol) {
    out.near_misses.emplace_back(GpcInequation::kZetaZero, out.witness.zeta);
  }
  if (!structural) {
    const double eta_gap = out.witness.eta_norm_sq - zeta_gap;
    if (std::abs(eta_gap) <= tol) {
      out.violations.emplace_back(GpcInequation::kEtaEquality, eta_gap);
    } else if (std::abs(eta_gap) <= kGpcNearTol) {
      out.near_misses.emplace_back(GpcInequation::kEtaEquality, eta_gap);
    }
  }
  return out;
}

}  // namespace

PairCheckResult pair_check(const DesignMatrix& design,
                           const SupportSignPair& pair, double tol) {
  if (pair.s == pair.s_prime) {
    throw Error("pair supports must be distinct");
  }
  GramFactor factor_s = gram_factorize(design, pair.s);
  GramFactor factor_sp = gram_factorize(design, pair.s_prime);

  const Eigen::VectorXd w_s = factor_s.solve(pair.eps_s);
  const Eigen::VectorXd w_sp = factor_sp.solve(pair.eps_s_prime);
  const Eigen::VectorXd image_s = design.submatrix(pair.s) * w_s;
  const Eigen::VectorXd image_sp = design.submatrix(pair.s_prime) * w_sp;

  const bool structural =
      nested_matching_signs(pair.s, pair.eps_s, pair.s_prime, pair.eps_s_prime);
  const WitnessFlags flags =
      evaluate_witness(pair.eps_s.dot(w_s), pair.eps_s_prime.dot(w_sp),
                       image_s, image_sp, structural, tol);

  PairCheckResult result;
  result.witness = flags.witness;
  for (const auto& [inequation, gap] : flags.violations) {
    if (inequation == GpcInequation::kZetaZero) result.zeta_zero = true;
    if (inequation == GpcInequation::kEtaEquality) result.eta_equality = true;
  }
  result.near_miss = !flags.near_misses.empty();
  return result;
}

std::uint64_t count_support_sign_items(int p, int max_size) {
  return clamp_count(items_capped(p, max_size));
}

std::uint64_t count_support_sign_pairs(int p, int max_size) {
  return clamp_count(pairs_capped(p, max_size));
}

void enumerate_support_sign_items(
    int p, int max_size,
    const std::function<void(const std::vector<int>&, const Eigen::VectorXd&)>&
        visit) {
  std::vector<int> support;
  while (detail::next_support(support, p, max_size)) {
    const int k = static_cast<int>(support.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
      visit(support, signs_from_mask(mask, k));
    }
  }
}

namespace {

GpcReport check_exhaustive(const DesignMatrix& design, const GpcOptions& options,
                           int max_size, std::uint64_t total_pairs) {
  std::vector<SupportData> supports;
  std::vector<ItemData> items;
  {
    std::vector<int> support;
    while (detail::next_support(support, design.cols(), max_size)) {
      SupportData data;
      data.support = support;
      try {
        data.factor = gram_factorize(design, support);
        data.full_rank = true;
      } catch (const RankDeficient&) {
        data.full_rank = false;
      }
      supports.push_back(std::move(data));
    }
    for (size_t sid = 0; sid < supports.size(); ++sid) {
      if (!supports[sid].full_rank) continue;
      const auto& data = supports[sid];
      const int k = static_cast<int>(data.support.size());
      const Eigen::MatrixXd sub = design.submatrix(data.support);
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        const Eigen::VectorXd signs = signs_from_mask(mask, k);
        const Eigen::VectorXd w = data.factor->solve(signs);
        items.push_back(
            {static_cast<int>(sid), mask, signs.dot(w), sub * w});
      }
    }
  }

  struct WorkerResult {
    std::uint64_t checked = 0;
    std::vector<GpcViolation> violations;
    std::vector<GpcViolation> near_violations;
  };

  const int jobs = std::max(1, options.jobs);
  std::vector<WorkerResult> results(jobs);
  const size_t item_count = items.size();

  auto run_range = [&](size_t begin, size_t end, WorkerResult& out) {
    for (size_t i = begin; i < end; ++i) {
      const ItemData& a = items[i];
      const Eigen::VectorXd eps_a =
          signs_from_mask(a.mask, static_cast<int>(
                                      supports[a.support_id].support.size()));
      for (size_t j = i + 1; j < item_count; ++j) {
        const ItemData& b = items[j];
        if (a.support_id == b.support_id) continue;
        const Eigen::VectorXd eps_b = signs_from_mask(
            b.mask,
            static_cast<int>(supports[b.support_id].support.size()));
        const bool structural = nested_matching_signs(
            supports[a.support_id].support, eps_a,
            supports[b.support_id].support, eps_b);
        const WitnessFlags flags = evaluate_witness(
            a.quad, b.quad, a.image, b.image, structural, options.tolerance);
        ++out.checked;
        const auto make_pair = [&]() {
          return SupportSignPair{supports[a.support_id].support,
                                 supports[b.support_id].support, eps_a, eps_b};
        };
        for (const auto& [inequation, gap] : flags.violations) {
          out.violations.push_back({make_pair(), inequation, gap});
        }
        for (const auto& [inequation, gap] : flags.near_misses) {
          out.near_violations.push_back({make_pair(), inequation, gap});
        }
      }
    }
  };

  if (jobs == 1 || item_count < 64) {
    run_range(0, item_count, results[0]);
  } else {
    std::vector<std::thread> threads;
    const size_t chunk = (item_count + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const size_t begin = std::min(item_count, w * chunk);
      const size_t end = std::min(item_count, begin + chunk);
      threads.emplace_back(run_range, begin, end, std::ref(results[w]));
    }
    for (auto& thread : threads) thread.join();
  }

  GpcReport report;
  report.mode = GpcMode::kExhaustive;
  report.tolerance = options.tolerance;
  for (const WorkerResult& result : results) {
    report.pairs_checked += result.checked;
    report.violations.insert(report.violations.end(), result.violations.begin(),
                             result.violations.end());
    report.near_violations.insert(report.near_violations.end(),
                                  result.near_violations.begin(),
                                  result.near_violations.end());
  }
  report.skipped_rank_deficient = total_pairs - report.pairs_checked;
  std::sort(report.violations.begin(), report.violations.end(), violation_less);
  std::sort(report.near_violations.begin(), report.near_violations.end(),
            violation_less);
  return report;
}

GpcReport check_sampled(const DesignMatrix& design, const GpcOptions& options,
                        int max_size) {
  const int p = design.cols();
  Rng rng(options.seed);

  // Item sizes are drawn with probability proportional to C(p,k) 2^k; the
  // subset itself comes from Floyd's algorithm, so no unranking of huge
  // combination indices is needed.
  std::vector<long double> size_weights(max_size + 1, 0.0L);
  long double total_weight = 0.0L;
  for (int k = 1; k <= max_size; ++k) {
    long double weight = 1.0L;
    for (int i = 1; i <= k; ++i) {
      weight = weight * static_cast<long double>(p - k + i) /
               static_cast<long double>(i);
    }
    weight *= std::pow(2.0L, k);
    size_weights[k] = weight;
    total_weight += weight;
  }

  auto draw_item = [&](std::vector<int>& support, Eigen::VectorXd& signs) {
    long double ticket =
        static_cast<long double>(rng.uniform01()) * total_weight;
    int k = max_size;
    for (int size = 1; size <= max_size; ++size) {
      if (ticket < size_weights[size]) {
        k = size;
        break;
      }
      ticket -= size_weights[size];
    }
    support.clear();
    for (int j = p - k; j < p; ++j) {
      const int t = rng.uniform_int(j + 1);
      if (std::find(support.begin(), support.end(), t) != support.end()) {
        support.push_back(j);
      } else {
        support.push_back(t);
      }
    }
    std::sort(support.begin(), support.end());
    signs.resize(k);
    for (int i = 0; i < k; ++i) {
      signs(i) = rng.coin_flip() ? -1.0 : 1.0;
    }
  };

  GpcReport report;
  report.mode = GpcMode::kSampled;
  report.seed = options.seed;
  report.sample_count = options.budget;
  report.tolerance = options.tolerance;

  std::vector<int> s, sp;
  Eigen::VectorXd eps_s, eps_sp;
  for (std::uint64_t sample = 0; sample < options.budget; ++sample) {
    draw_item(s, eps_s);
    do {
      draw_item(sp, eps_sp);
    } while (sp == s);

    SupportSignPair pair{s, sp, eps_s, eps_sp};
    try {
      const PairCheckResult result = pair_check(design, pair, options.tolerance);
      ++report.pairs_checked;
      if (result.zeta_zero) {
        report.violations.push_back(
            {pair, GpcInequation::kZetaZero, result.witness.zeta});
      }
      if (result.eta_equality) {
        report.violations.push_back(
            {pair, GpcInequation::kEtaEquality,
             result.witness.eta_norm_sq - std::abs(result.witness.zeta)});
      }
      if (result.near_miss) {
        const double gap =
            std::min(std::abs(result.witness.zeta),
                     std::abs(result.witness.eta_norm_sq -
                              std::abs(result.witness.zeta)));
        report.near_violations.push_back(
            {pair, GpcInequation::kZetaZero, gap});
      }
    } catch (const RankDeficient&) {
      ++report.skipped_rank_deficient;
    }
  }
  std::sort(report.violations.begin(), report.violations.end(), violation_less);
  std::sort(report.near_violations.begin(), report.near_violations.end(),
            violation_less);
  return report;
}

}  // namespace

GpcReport check_gpc(const DesignMatrix& design, const GpcOptions& options) {
  const int max_size = std::min(design.rows(), design.cols());
  const std::uint64_t total_pairs =
      count_support_sign_pairs(design.cols(), max_size);
  if (total_pairs <= options.budget) {
    return check_exhaustive(design, options, max_size, total_pairs);
  }
  if (options.force_exhaustive) {
    throw CombinatorialOverflow(
        "exhaustive enumeration needs " + std::to_string(total_pairs) +
        " pairs, budget is " + std::to_string(options.budget));
  }
  return check_sampled(design, options, max_size);
}

std::string gpc_report_json(const GpcReport& report) {
  nlohmann::json root;
  if (report.mode == GpcMode::kExhaustive) {
    root["mode"] = "exhaustive";
  } else {
    root["mode"] = "sampled";
    root["seed"] = report.seed;
    root["sample_count"] = report.sample_count;
  }
  root["pairs_checked"] = report.pairs_checked;
  root["skipped_rank_deficient"] = report.skipped_rank_deficient;
  root["tolerance"] = report.tolerance;

  const auto violation_list = [](const std::vector<GpcViolation>& violations) {
    nlohmann::json list = nlohmann::json::array();
    for (const GpcViolation& violation : violations) {
      nlohmann::json item;
      std::vector<int> s, sp;
      for (int j : violation.pair.s) s.push_back(j + 1);
      for (int j : violation.pair.s_prime) sp.push_back(j + 1);
      item["S"] = s;
      item["Sprime"] = sp;
      std::vector<int> eps_s, eps_sp;
      for (Eigen::Index i = 0; i < violation.pair.eps_s.size(); ++i) {
        eps_s.push_back(violation.pair.eps_s(i) > 0 ? 1 : -1);
      }
      for (Eigen::Index i = 0; i < violation.pair.eps_s_prime.size(); ++i) {
        eps_sp.push_back(violation.pair.eps_s_prime(i) > 0 ? 1 : -1);
      }
      item["epsS"] = eps_s;
      item["epsSprime"] = eps_sp;
      item["inequation"] = violation.inequation == GpcInequation::kZetaZero
                               ? "ZETA_ZERO"
                               : "ETA_EQUALITY";
      item["gap"] = violation.gap;
      list.push_back(std::move(item));
    }
    return list;
  };
  root["violations"] = violation_list(report.violations);
  root["near_violations"] = violation_list(report.near_violations);
  return root.dump(2) + "\n";
}

}  // namespace lassopath
