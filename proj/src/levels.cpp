#include "modcurve/levels.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "modcurve/tables.hpp"

namespace modcurve {

PreimageCheck check_full_preimage(const MatGroup& g, std::uint64_t divisor, std::size_t cap) {
  PreimageCheck c;
  c.modulus = g.modulus();
  c.divisor = divisor;
  c.order = g.order(cap);
  c.reduced_order = project(g, divisor).order(cap);
  c.kernel_order = congruence_kernel_order(g.modulus(), divisor);
  c.passed = c.order == c.reduced_order * c.kernel_order;
  return c;
}

int minimal_stage(std::uint64_t prime) { return prime == 2 ? 2 : 1; }

std::uint64_t minimize_level(const MatGroup& g, std::uint64_t bound, std::size_t cap,
                             std::vector<PreimageCheck>* trail) {
  if (bound == 0 || g.modulus() % bound != 0) {
    throw InvalidArgument(std::to_string(bound) + " does not divide " +
                          std::to_string(g.modulus()));
  }
  const PreimageCheck top = check_full_preimage(g, bound, cap);
  if (trail) trail->push_back(top);
  if (!top.passed) {
    throw PreconditionFailed("group mod " + std::to_string(g.modulus()) +
                             " is not the full preimage of its reduction mod " +
                             std::to_string(bound));
  }
  for (std::uint64_t m : divisors(bound)) {
    if (m == bound) break;
    const PreimageCheck c = check_full_preimage(g, m, cap);
    if (trail) trail->push_back(c);
    if (c.passed) return m;
  }
  return bound;
}

LadicDetection detect_ladic_level(const MatGroup& g, int stage, std::size_t cap) {
  const auto factors = factorize(g.modulus());
  if (factors.size() != 1) {
    throw InvalidArgument("l-adic level detection needs a prime-power modulus, got " +
                          std::to_string(g.modulus()));
  }
  const std::uint64_t ell = factors[0].prime;
  if (stage < minimal_stage(ell)) {
    throw StageTooLow("stage " + std::to_string(stage) + " is below s_0 = " +
                      std::to_string(minimal_stage(ell)) + " for l = " + std::to_string(ell));
  }
  if (stage + 1 > factors[0].exponent) {
    throw InvalidArgument("stage " + std::to_string(stage) + " needs the group mod " +
                          std::to_string(ell) + "^" + std::to_string(stage + 1));
  }
  const std::uint64_t upper = ipow(ell, stage + 1);
  const std::uint64_t lower = ipow(ell, stage);

  LadicDetection out;
  StageEvidence& ev = out.evidence;
  ev.prime = ell;
  ev.stage = stage;
  ev.upper_order = project(g, upper).order(cap);
  ev.lower_order = project(g, lower).order(cap);
  ev.kernel_order = ev.upper_order / ev.lower_order;
  ev.full_kernel_order = ipow(ell, 4);
  ev.kernel_full = ev.kernel_order == ev.full_kernel_order;
  if (!ev.kernel_full) return out;

  out.certified = true;
  LevelCertificate& cert = out.certificate;
  cert.prime_powers = {{ell, stage}};
  cert.level = lower;
  cert.stages.push_back(ev);
  cert.minimal_level = minimize_level(g, lower, cap, &cert.checks);
  return out;
}

LevelCertificate compose_level(const MatGroup& g, std::span<const PrimeLevel> data,
                               std::size_t cap) {
  std::vector<PrimeLevel> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PrimeLevel& x, const PrimeLevel& y) { return x.prime < y.prime; });
  std::uint64_t radical = 1;
  std::uint64_t stage_modulus = 1;
  std::uint64_t level = 1;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& [p, t] = sorted[i];
    if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
    if (i > 0 && sorted[i - 1].prime == p) throw InvalidArgument("repeated prime in level data");
    if (t < 1) throw InvalidArgument("level exponents must be positive");
    radical *= p;
    stage_modulus *= ipow(p, t + 1);
    level *= ipow(p, t);
  }
  if (g.modulus() % stage_modulus != 0) {
    throw InvalidArgument("group modulus " + std::to_string(g.modulus()) +
                          " is not a multiple of " + std::to_string(stage_modulus));
  }
  if (prime_support(g.modulus()) != prime_support(radical)) {
    throw InvalidArgument("level data must cover exactly the primes of the group modulus");
  }
  const MatGroup stage_group = project(g, stage_modulus);

  LevelCertificate cert;
  cert.prime_powers = sorted;
  cert.level = level;
  for (const auto& [p, t] : sorted) {
    const std::uint64_t others = radical / p;
    const MatGroup local = project(stage_group, others * ipow(p, t + 1));
    const PreimageCheck c = check_full_preimage(local, others * ipow(p, t), cap);
    cert.checks.push_back(c);
    if (!c.passed) {
      throw HypothesisFailed(p, "hypothesis fails at l = " + std::to_string(p) + ": group mod " +
                                    std::to_string(c.modulus) +
                                    " is not the full preimage of its reduction mod " +
                                    std::to_string(c.divisor));
    }
  }
  const PreimageCheck direct = check_full_preimage(stage_group, level, cap);
  cert.checks.push_back(direct);
  if (!direct.passed) throw Error("composed level failed the direct order check");
  cert.minimal_level = minimize_level(stage_group, level, cap, &cert.checks);
  return cert;
}

// ---------------------------------------------------------------------------

namespace {

void require_member(std::span<const std::uint64_t> primes, std::uint64_t ell) {
  if (std::find(primes.begin(), primes.end(), ell) == primes.end()) {
    throw InvalidArgument(std::to_string(ell) + " is not in the prime set");
  }
}

std::uint64_t image_order_at(const BoundInput& input, std::uint64_t prime) {
  const std::uint64_t full = gl2_order(prime);
  auto it = input.image_order.find(prime);
  if (it == input.image_order.end()) return full;
  if (it->second == 0 || full % it->second != 0) {
    throw InvalidArgument("image order " + std::to_string(it->second) + " does not divide #GL_2(Z/" +
                          std::to_string(prime) + ")");
  }
  return it->second;
}

}  // namespace

int tau_cap(std::span<const std::uint64_t> primes, std::uint64_t ell) {
  require_member(primes, ell);
  int cap = 0;
  for (std::uint64_t q : primes) {
    if (q != ell) cap += valuation(gl2_order(q), ell);
  }
  return cap;
}

int default_tau(const BoundInput& input, std::uint64_t ell) {
  require_member(input.primes, ell);
  int tau = 0;
  for (std::uint64_t q : input.primes) {
    if (q != ell) tau += valuation(image_order_at(input, q), ell);
  }
  return tau;
}

int level_bound(const BoundInput& input, std::uint64_t ell) {
  require_member(input.primes, ell);
  const std::set<std::uint64_t> unique(input.primes.begin(), input.primes.end());
  if (unique.size() != input.primes.size()) throw InvalidArgument("repeated prime in S");
  for (std::uint64_t q : input.primes) {
    if (!is_prime(q)) throw InvalidArgument(std::to_string(q) + " is not prime");
  }

  std::uint64_t single = 0;
  if (auto it = input.single_prime_level.find(ell); it != input.single_prime_level.end()) {
    single = it->second;
  } else if (auto m1 = m1_table(ell)) {
    single = *m1;
  } else {
    throw InvalidArgument("no single-prime level known for l = " + std::to_string(ell));
  }
  if (single == 0) throw InvalidArgument("single-prime level must be positive");

  int tau = 0;
  if (auto it = input.tau.find(ell); it != input.tau.end()) {
    tau = it->second;
    if (tau < 0 || tau > tau_cap(input.primes, ell)) {
      throw InvalidArgument("tau = " + std::to_string(tau) + " exceeds v_l(#GL_2(Z/m)) = " +
                            std::to_string(tau_cap(input.primes, ell)));
    }
  } else {
    tau = default_tau(input, ell);
  }
  const int base = std::max(valuation(single, ell), valuation(2 * ell, ell));
  return base + tau;
}

std::vector<ClassificationRow> classification_table() {
  std::vector<ClassificationRow> rows;
  for (const ClassificationEntry& e : published_classification_table()) {
    BoundInput in;
    in.primes = {2, 3};
    if (e.p != 1) {
      in.primes.push_back(e.p);
      if (auto order = special_image_order(e.p)) in.image_order[e.p] = *order;
    }
    ClassificationRow row;
    row.p = e.p;
    row.a = level_bound(in, 2);
    row.b = level_bound(in, 3);
    row.published_a = e.a;
    row.published_b = e.b;
    row.matches = row.a == e.a && row.b == e.b;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace modcurve
