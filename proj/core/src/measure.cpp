#include "pet/measure.hpp"

namespace pet {

FolnerNet FolnerNet::z_initial_segments() {
  return FolnerNet("z_initial_segments", 1, [](std::int64_t n) {
    std::vector<IntPoint> f;
    f.reserve(static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = 0; i <= n; ++i) f.push_back(IntPoint::scalar(i));
    return f;
  });
}

FolnerNet FolnerNet::z_symmetric_intervals() {
  return FolnerNet("z_symmetric_intervals", 1, [](std::int64_t n) {
    std::vector<IntPoint> f;
    f.reserve(2 * static_cast<std::size_t>(n) + 1);
    for (std::int64_t i = -n; i <= n; ++i) f.push_back(IntPoint::scalar(i));
    return f;
  });
}

FolnerNet FolnerNet::zd_boxes(int d) {
  if (d < 1) throw ParameterError("zd_boxes requires dimension d >= 1");
  return FolnerNet("zd_boxes", d, [d](std::int64_t n) {
    std::vector<IntPoint> f;
    std::vector<std::int64_t> coord(static_cast<std::size_t>(d), 0);
    for (;;) {
      f.push_back(IntPoint(coord));
      int pos = d - 1;
      while (pos >= 0 && coord[static_cast<std::size_t>(pos)] == n)
        coord[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
      ++coord[static_cast<std::size_t>(pos)];
    }
    return f;
  });
}

std::vector<IntPoint> FolnerNet::set(std::int64_t i) const {
  if (i < 0) throw DomainError("Folner index must be >= 0");
  return gen_(i);
}

BasicSignedMeasure<IntPoint, double> FolnerNet::sigma(std::int64_t i) const {
  return BasicSignedMeasure<IntPoint, double>::uniform(set(i));
}

double FolnerNet::defect(std::int64_t i, const IntPoint& g) const {
  std::vector<IntPoint> f = set(i);
  std::sort(f.begin(), f.end());
  std::vector<IntPoint> shifted;
  shifted.reserve(f.size());
  for (const IntPoint& p : f) shifted.push_back(p + g);
  std::sort(shifted.begin(), shifted.end());
  // |F ^ (g+F)| by sorted merge.
  std::size_t a = 0, b = 0, sym = 0;
  while (a < f.size() || b < shifted.size()) {
    if (b == shifted.size() || (a < f.size() && f[a] < shifted[b])) {
      ++sym;
      ++a;
    } else if (a == f.size() || shifted[b] < f[a]) {
      ++sym;
      ++b;
    } else {
      ++a;
      ++b;
    }
  }
  return static_cast<double>(sym) / static_cast<double>(f.size());
}

}  // namespace pet
