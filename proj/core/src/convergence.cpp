#include "pet/convergence.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace pet {

namespace {

std::vector<Eigen::MatrixXd> as_matrices(std::vector<Eigen::VectorXd> vs) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(vs.size());
  for (auto& v : vs) out.emplace_back(std::move(v));
  return out;
}

}  // namespace

PointNet::PointNet(std::int64_t lo, std::vector<Eigen::VectorXd> values)
    : lo_(lo), values_(as_matrices(std::move(values))), metric_(MetricKind::euclidean) {
  if (values_.empty()) throw DomainError("point net requires a nonempty window");
  for (const auto& v : values_)
    if (v.rows() != values_.front().rows() || v.cols() != values_.front().cols())
      throw ShapeError("net values must share one dimension");
}

PointNet::PointNet(std::int64_t lo, std::vector<Eigen::MatrixXd> values, MetricKind metric)
    : lo_(lo), values_(std::move(values)), metric_(metric) {
  if (values_.empty()) throw DomainError("point net requires a nonempty window");
  for (const auto& v : values_)
    if (v.rows() != values_.front().rows() || v.cols() != values_.front().cols())
      throw ShapeError("net values must share one dimension");
}

const Eigen::MatrixXd& PointNet::value(std::int64_t i) const {
  if (i < lo_ || i > hi()) throw DomainError("net index outside window");
  return values_[static_cast<std::size_t>(i - lo_)];
}

double PointNet::distance(std::int64_t i, std::int64_t j) const {
  Eigen::MatrixXd diff = value(i) - value(j);
  return metric_ == MetricKind::spectral ? spectral_norm(diff) : diff.norm();
}

bool PointNet::spread_is_exact(std::int64_t i) const {
  if (i < lo_ || i > hi()) throw DomainError("empty tail: index outside window");
  std::int64_t tail = hi() - i + 1;
  return metric_ == MetricKind::spectral || tail * (tail - 1) / 2 <= kDefaultPairBudget;
}

double PointNet::spread_from(std::int64_t i) const {
  if (i < lo_ || i > hi()) throw DomainError("empty tail: index outside window");
  std::int64_t tail = hi() - i + 1;
  if (!spread_is_exact(i)) {
    // Doubled max-distance-to-centroid upper bound for oversized vector nets.
    Eigen::MatrixXd centroid = Eigen::MatrixXd::Zero(values_.front().rows(),
                                                     values_.front().cols());
    for (std::int64_t j = i; j <= hi(); ++j) centroid += value(j);
    centroid /= static_cast<double>(tail);
    double worst = 0.0;
    for (std::int64_t j = i; j <= hi(); ++j)
      worst = std::max(worst, (value(j) - centroid).norm());
    return 2.0 * worst;
  }
  double best = 0.0;
  for (std::int64_t a = i; a <= hi(); ++a)
    for (std::int64_t b = a + 1; b <= hi(); ++b) best = std::max(best, distance(a, b));
  return best;
}

std::int64_t PointNet::constant_tail_start() const {
  std::int64_t t = hi();
  while (t > lo_ && distance(t - 1, hi()) == 0.0) --t;
  return t < hi() ? t : hi() + 1;
}

PointNet::Oscillation PointNet::oscillation() const {
  // Tails are nested, so the window minimum of spread_from is attained at the
  // last index, whose tail is a singleton.  The value is exact only when the
  // net has a constant tail in-window; otherwise it is a window artifact and
  // is flagged as an estimate.
  return {spread_from(hi()), constant_tail_start() <= hi()};
}

std::vector<double> suffix_spreads(const PointNet& net) {
  std::vector<double> out(net.size(), 0.0);
  // spread_from(i) = max(spread_from(i+1), max_{j>i} d(a_i, a_j))
  for (std::int64_t i = net.hi() - 1; i >= net.lo(); --i) {
    double best = out[static_cast<std::size_t>(i - net.lo()) + 1];
    for (std::int64_t j = i + 1; j <= net.hi(); ++j)
      best = std::max(best, net.distance(i, j));
    out[static_cast<std::size_t>(i - net.lo())] = best;
  }
  return out;
}

Sampling Sampling::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw FormatError("sampling template must look like {i,2i}");
  s = s.substr(1, s.size() - 2);

  std::vector<std::pair<std::int64_t, std::int64_t>> terms;  // (coeff, offset): coeff*i+offset
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string term = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                : comma - pos);
    std::int64_t coeff = 1, offset = 0;
    std::size_t ipos = term.find('i');
    if (ipos == std::string::npos) throw FormatError("sampling term must mention i");
    if (ipos > 0) {
      if (term.substr(0, ipos) != "2") throw FormatError("sampling coefficient must be 2");
      coeff = 2;
    }
    std::string rest = term.substr(ipos + 1);
    if (!rest.empty()) {
      if (rest[0] != '+') throw FormatError("sampling offset must be +k");
      try {
        offset = std::stoll(rest.substr(1));
      } catch (const std::exception&) {
        throw FormatError("bad sampling offset in '" + term + "'");
      }
      if (offset < 0) throw FormatError("sampling offset must be nonnegative");
    }
    terms.emplace_back(coeff, offset);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (terms.empty()) throw FormatError("sampling template must be nonempty");

  Sampling out;
  out.description = "{" + s + "}";
  out.at = [terms](std::int64_t i) {
    std::vector<std::int64_t> idx;
    idx.reserve(terms.size());
    for (const auto& [c, k] : terms) {
      std::int64_t j = c * i + k;
      idx.push_back(std::max(j, i));  // eta_i must stay in the final segment at i
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
  };
  return out;
}

namespace {

MetastabilityCertificate scan_impl(const std::function<double(std::int64_t, std::int64_t)>& dist,
                                   std::int64_t lo, std::int64_t hi, double eps,
                                   const Sampling& eta) {
  if (eps <= 0.0) throw DomainError("metastability requires eps > 0");
  MetastabilityCertificate cert;
  cert.eps = eps;
  cert.sampling = eta.description;
  cert.search_lo = lo;
  cert.search_hi = hi;
  for (std::int64_t i = lo; i <= hi; ++i) {
    std::vector<std::int64_t> idx = eta.at(i);
    // A sampled set escaping the window cannot certify a witness (the tail
    // values are unknown); the index is skipped and the certificate marked
    // partial.
    bool clipped = false;
    for (std::int64_t j : idx) clipped = clipped || j > hi;
    if (clipped) {
      cert.partial = true;
      continue;
    }
    double spread = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        spread = std::max(spread, dist(idx[a], idx[b]));
    if (spread < eps) {
      cert.found = true;
      cert.witness = i;
      cert.spread = spread;
      return cert;
    }
  }
  return cert;
}

}  // namespace

MetastabilityCertificate metastable_index(const PointNet& net, double eps,
                                          const Sampling& eta) {
  return scan_impl([&net](std::int64_t a, std::int64_t b) { return net.distance(a, b); },
                   net.lo(), net.hi(), eps, eta);
}

MetastabilityCertificate metastable_scan(
    const std::function<Eigen::VectorXd(std::int64_t)>& value, std::int64_t lo,
    std::int64_t bound, double eps, const Sampling& eta) {
  std::vector<Eigen::VectorXd> memo;
  auto fetch = [&](std::int64_t j) -> const Eigen::VectorXd& {
    while (static_cast<std::int64_t>(memo.size()) <= j - lo)
      memo.push_back(value(lo + static_cast<std::int64_t>(memo.size())));
    return memo[static_cast<std::size_t>(j - lo)];
  };
  return scan_impl(
      [&fetch](std::int64_t a, std::int64_t b) { return (fetch(a) - fetch(b)).norm(); }, lo,
      bound, eps, eta);
}

UniformRateReport uniform_rate_search(std::span<const PointNet> instances, double eps,
                                      const Sampling& eta, std::int64_t bound) {
  UniformRateReport report;
  report.all_found = true;
  for (const PointNet& net : instances) {
    MetastabilityCertificate cert =
        scan_impl([&net](std::int64_t a, std::int64_t b) { return net.distance(a, b); },
                  net.lo(), std::min(net.hi(), bound), eps, eta);
    report.all_found = report.all_found && cert.found;
    if (cert.found) report.aggregate = std::max(report.aggregate, cert.witness);
    report.certificates.push_back(std::move(cert));
  }
  if (!report.all_found) report.aggregate = -1;
  return report;
}

Decomposition structured_decompose(const UnitaryAction& t, const Eigen::VectorXd& x,
                                   std::int64_t cutoff) {
  if (cutoff < 0) throw DomainError("decomposition cutoff must be >= 0");
  if (x.size() != t.dim()) throw ShapeError("vector dimension does not match the action");
  Eigen::MatrixXd avg = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  for (std::int64_t j = 0; j <= cutoff; ++j) avg += t(j);
  avg /= static_cast<double>(cutoff + 1);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(avg, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  double tau = 1e-10 * scale;

  Decomposition out;
  out.cutoff = cutoff;
  Eigen::VectorXd xs = Eigen::VectorXd::Zero(x.size());
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) > tau) {
      // right singular vectors span the row space = column space of Av^T
      Eigen::VectorXd v = svd.matrixV().col(k);
      xs += v * (v.dot(x));
      ++out.rank;
    }
  }
  out.structured = xs;
  out.random = x - xs;
  out.additivity_residual = (out.structured + out.random - x).norm();
  out.orthogonality_residual = std::abs(out.structured.dot(out.random));
  out.killed_norm = (avg * out.random).norm();
  return out;
}

DctReport dct_check(const std::vector<std::int64_t>& points, std::int64_t lo,
                    const std::vector<VectorField<std::int64_t>>& fields,
                    const SignedMeasure& mu) {
  if (points.empty()) throw DomainError("dct_check requires a nonempty point set");
  if (fields.size() < 2) throw DomainError("dct_check requires a window of length >= 2");
  for (const auto& [p, w] : mu.atoms())
    if (std::find(points.begin(), points.end(), p) == points.end())
      throw DomainError("measure support escapes the point set");

  // Per-point nets, with the eventual-constancy precondition enforced.
  std::vector<PointNet> pointwise;
  pointwise.reserve(points.size());
  for (std::int64_t x : points) {
    std::vector<Eigen::VectorXd> vals;
    vals.reserve(fields.size());
    for (const auto& f : fields) vals.push_back(f.at(x));
    PointNet net(lo, std::move(vals));
    if (net.constant_tail_start() > net.hi())
      throw PreconditionError("field net at point " + std::to_string(x) +
                              " is not eventually constant within the window");
    pointwise.emplace_back(std::move(net));
  }

  std::vector<Eigen::VectorXd> paired;
  paired.reserve(fields.size());
  for (const auto& f : fields) paired.push_back(pair_vector(f, mu));
  PointNet lhs_net(lo, std::move(paired));

  DctReport report;
  double tv = mu.tv_norm();
  PointNet::Oscillation osc_lhs = lhs_net.oscillation();
  report.osc_lhs = osc_lhs.value;
  report.osc_exact = osc_lhs.exact;
  double osc_sup = 0.0, spread_sup = 0.0;
  for (const PointNet& net : pointwise) {
    PointNet::Oscillation o = net.oscillation();
    report.osc_exact = report.osc_exact && o.exact;
    osc_sup = std::max(osc_sup, o.value);
    spread_sup = std::max(spread_sup, net.spread_from(lo));
  }
  report.osc_rhs = tv * osc_sup;
  report.spread_lhs = lhs_net.spread_from(lo);
  report.spread_rhs = tv * spread_sup;

  bool pass = report.osc_lhs <= report.osc_rhs + 1e-12;
  for (std::int64_t i = lo; i <= lhs_net.hi() && pass; ++i) {
    double sup_i = 0.0;
    for (const PointNet& net : pointwise) sup_i = std::max(sup_i, net.spread_from(i));
    pass = lhs_net.spread_from(i) <= tv * sup_i + 1e-12;
  }
  report.pass = pass;
  report.equality = std::abs(report.spread_lhs - report.spread_rhs) <= 1e-12;
  return report;
}

}  // namespace pet
