#include "fnfpad/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fnfpad/image.hpp"

namespace fnfpad {

double fisher_discriminant_ratio(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("fisher_discriminant_ratio: too few samples");
  const double ma = mean_of(a), mb = mean_of(b);
  const double va = population_variance(a), vb = population_variance(b);
  const double gap = ma - mb;
  if (va + vb < 1e-30) {
    const double scale = std::max({1.0, std::abs(ma), std::abs(mb)});
    if (std::abs(gap) <= 1e-12 * scale) return 0.0;
    throw std::runtime_error("degenerate separation");
  }
  return gap * gap / (va + vb);
}

namespace {

// midranks of the pooled sample; also reports tie group sizes
std::vector<double> midranks(const std::vector<double>& pooled, std::vector<std::size_t>* ties) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    if (ties && j > i) ties->push_back(j - i + 1);
    i = j + 1;
  }
  return ranks;
}

// exact two-sided p by enumerating all C(n, na) labelings of distinct ranks
double exact_two_sided_p(std::size_t na, std::size_t nb, double u_obs) {
  const std::size_t n = na + nb;
  const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
  const double dev = std::abs(u_obs - mu);
  std::size_t extreme = 0, total = 0;
  std::vector<std::size_t> idx(na);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    double rank_sum = 0.0;
    for (std::size_t k : idx) rank_sum += static_cast<double>(k + 1);
    const double u = rank_sum - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);
    if (std::abs(u - mu) >= dev - 1e-12) ++extreme;
    ++total;
    // next combination
    std::size_t i = na;
    while (i > 0 && idx[i - 1] == n - na + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < na; ++j) idx[j] = idx[j - 1] + 1;
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

}  // namespace

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("mann_whitney_u: empty sample");
  const std::size_t na = a.size(), nb = b.size(), n = na + nb;

  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::vector<std::size_t> tie_sizes;
  const std::vector<double> ranks = midranks(pooled, &tie_sizes);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];
  const double u = rank_sum_a - 0.5 * static_cast<double>(na) * static_cast<double>(na + 1);

  MannWhitneyResult res;
  res.u = u;
  if (n <= 12 && tie_sizes.empty()) {
    res.exact = true;
    res.p_two_sided = exact_two_sided_p(na, nb, u);
  } else {
    const double mu = 0.5 * static_cast<double>(na) * static_cast<double>(nb);
    double tie_term = 0.0;
    for (std::size_t t : tie_sizes)
      tie_term += static_cast<double>(t) * t * t - static_cast<double>(t);
    const double nn = static_cast<double>(n);
    const double var = (static_cast<double>(na) * nb / 12.0) *
                       ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
    if (var <= 0.0) {
      res.p_two_sided = 1.0;  // everything tied
    } else {
      const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
      res.p_two_sided = std::erfc(z / std::sqrt(2.0));
    }
  }
  res.p_two_sided = std::min(1.0, std::max(res.p_two_sided, 1e-300));
  return res;
}

SeparationReport build_separation_report(const std::vector<std::string>& names,
                                         const std::vector<std::vector<double>>& genuine,
                                         const std::vector<std::vector<double>>& spoof,
                                         const std::string& context) {
  if (names.size() != genuine.size() || names.size() != spoof.size())
    throw std::invalid_argument("build_separation_report: size mismatch");
  bool any_genuine = false, any_spoof = false;
  for (const auto& v : genuine) any_genuine |= !v.empty();
  for (const auto& v : spoof) any_spoof |= !v.empty();
  if (!any_genuine || !any_spoof)
    throw std::invalid_argument("build_separation_report: missing class");

  SeparationReport rep;
  rep.context = context;
  for (std::size_t i = 0; i < names.size(); ++i) {
    FeatureSeparation fs;
    fs.name = names[i];
    const auto& g = genuine[i];
    const auto& s = spoof[i];
    fs.genuine_mean = mean_of(g);
    fs.genuine_std = std::sqrt(population_variance(g));
    fs.spoof_mean = mean_of(s);
    fs.spoof_std = std::sqrt(population_variance(s));
    fs.delta = fs.genuine_mean - fs.spoof_mean;
    if (g.size() < 2 || s.size() < 2) {
      fs.flags.push_back("insufficient_samples");
    } else {
      try {
        fs.fdr = fisher_discriminant_ratio(g, s);
      } catch (const std::runtime_error&) {
        fs.flags.push_back("degenerate_separation");
      }
    }
    if (!g.empty() && !s.empty()) {
      const MannWhitneyResult mw = mann_whitney_u(g, s);
      fs.u_statistic = mw.u;
      fs.p_value = mw.p_two_sided;
    }
    rep.features.push_back(std::move(fs));
  }
  return rep;
}

}  // namespace fnfpad
