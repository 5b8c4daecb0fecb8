#include "sllg/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace sllg {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Plan cache. Planning mutates global FFTW state, so it is serialized;
// execution on distinct buffers is thread-safe. FFTW_ESTIMATE keeps plan
// selection independent of measured timings, so runs are reproducible.
class PlanCache {
 public:
  static fftw_plan get(const TorusGrid& g, int sign) {
    static PlanCache cache;
    std::lock_guard<std::mutex> lock(cache.mutex_);
    auto key = std::make_tuple(g.dim, g.n, sign);
    auto it = cache.plans_.find(key);
    if (it != cache.plans_.end()) return it->second;

    std::vector<std::complex<double>> buf(g.size());
    int dims[3] = {g.n, g.n, g.n};
    // FFTW is row-major with the last dimension fastest; our layout has the
    // first axis fastest, so slot order (z, y, x) matches dims directly.
    fftw_plan p = fftw_plan_dft(
        g.dim, dims, reinterpret_cast<fftw_complex*>(buf.data()),
        reinterpret_cast<fftw_complex*>(buf.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.plans_.emplace(key, p);
    return p;
  }

 private:
  PlanCache() = default;
  std::mutex mutex_;
  std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

void dft_forward(const TorusGrid& g, std::complex<double>* data) {
  fftw_plan p = PlanCache::get(g, FFTW_FORWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
  const double s = 1.0 / static_cast<double>(g.size());
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m; ++i) data[i] *= s;
}

void dft_backward(const TorusGrid& g, std::complex<double>* data) {
  fftw_plan p = PlanCache::get(g, FFTW_BACKWARD);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

std::vector<std::complex<double>> forward_component(
    const TorusGrid& g, const std::vector<double>& samples) {
  std::vector<std::complex<double>> buf(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) buf[i] = samples[i];
  dft_forward(g, buf.data());
  return buf;
}

std::vector<double> backward_component(const TorusGrid& g,
                                       std::vector<std::complex<double>> buf) {
  dft_backward(g, buf.data());
  std::vector<double> out(buf.size());
  for (std::size_t i = 0; i < buf.size(); ++i) out[i] = buf[i].real();
  return out;
}

// Per-axis signed wavenumber table for one grid size.
std::vector<int> axis_wavenumbers(int n) {
  std::vector<int> k(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = i <= n / 2 ? i : i - n;
  return k;
}

template <class Apply>
void for_each_mode(const TorusGrid& g, Apply&& apply) {
  const std::size_t m = g.size();
  for (std::size_t i = 0; i < m; ++i) apply(i);
}

void apply_axis_derivative(const TorusGrid& g,
                           std::vector<std::complex<double>>& c, int axis) {
  const auto wk = axis_wavenumbers(g.n);
  const auto nn = static_cast<std::size_t>(g.n);
  for_each_mode(g, [&](std::size_t i) {
    std::size_t slot = i;
    for (int a = 0; a < axis; ++a) slot /= nn;
    const int k = wk[slot % nn];
    c[i] *= std::complex<double>(0.0, kTwoPi * k);
  });
}

void apply_axis_pair(const TorusGrid& g, std::vector<std::complex<double>>& c,
                     int a, int b) {
  const auto wk = axis_wavenumbers(g.n);
  const auto nn = static_cast<std::size_t>(g.n);
  for_each_mode(g, [&](std::size_t i) {
    std::size_t s = i;
    std::array<int, 3> coords{0, 0, 0};
    coords[0] = static_cast<int>(s % nn);
    if (g.dim > 1) coords[1] = static_cast<int>((s / nn) % nn);
    if (g.dim > 2) coords[2] = static_cast<int>(s / (nn * nn));
    const double ka = wk[static_cast<std::size_t>(coords[a])];
    const double kb = wk[static_cast<std::size_t>(coords[b])];
    c[i] *= -kTwoPi * kTwoPi * ka * kb;
  });
}

// Per-axis slot mapping used by spectral embedding; target slots carry a
// weight so Nyquist energy splits/folds consistently for real fields.
struct SlotTarget {
  int slot;
  double weight;
};

std::vector<std::vector<SlotTarget>> axis_embed_map(int n_src, int n_dst) {
  std::vector<std::vector<SlotTarget>> map(static_cast<std::size_t>(n_src));
  for (int i = 0; i < n_src; ++i) {
    const int k = i <= n_src / 2 ? i : i - n_src;
    auto& targets = map[static_cast<std::size_t>(i)];
    if (n_dst >= n_src) {
      if (k == n_src / 2 && n_dst > n_src) {
        targets.push_back({n_src / 2, 0.5});
        targets.push_back({n_dst - n_src / 2, 0.5});
      } else {
        targets.push_back({k >= 0 ? k : n_dst + k, 1.0});
      }
    } else {
      if (std::abs(k) < n_dst / 2)
        targets.push_back({k >= 0 ? k : n_dst + k, 1.0});
      else if (std::abs(k) == n_dst / 2)
        targets.push_back({n_dst / 2, 1.0});
      // |k| > n_dst/2: dropped
    }
  }
  return map;
}

std::vector<std::complex<double>> embed_component(
    const TorusGrid& src, const TorusGrid& dst,
    const std::vector<std::complex<double>>& c) {
  const auto map = axis_embed_map(src.n, dst.n);
  std::vector<std::complex<double>> out(dst.size(), {0.0, 0.0});
  const auto ns = static_cast<std::size_t>(src.n);
  const auto nd = static_cast<std::size_t>(dst.n);
  const std::size_t m = src.size();
  for (std::size_t i = 0; i < m; ++i) {
    if (c[i] == std::complex<double>(0.0, 0.0)) continue;
    std::array<int, 3> s{0, 0, 0};
    s[0] = static_cast<int>(i % ns);
    if (src.dim > 1) s[1] = static_cast<int>((i / ns) % ns);
    if (src.dim > 2) s[2] = static_cast<int>(i / (ns * ns));
    const auto& t0 = map[static_cast<std::size_t>(s[0])];
    const auto& t1 = src.dim > 1 ? map[static_cast<std::size_t>(s[1])]
                                 : std::vector<SlotTarget>{{0, 1.0}};
    const auto& t2 = src.dim > 2 ? map[static_cast<std::size_t>(s[2])]
                                 : std::vector<SlotTarget>{{0, 1.0}};
    for (const auto& a : t0)
      for (const auto& b : t1)
        for (const auto& d : t2) {
          const std::size_t j = static_cast<std::size_t>(a.slot) +
                                nd * (static_cast<std::size_t>(b.slot) +
                                      nd * static_cast<std::size_t>(d.slot));
          out[j] += a.weight * b.weight * d.weight * c[i];
        }
  }
  return out;
}

double spectral_weighted_sq(const SpectralField& f, double (*w)(long, double),
                            double s) {
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (const auto& c : f.comp)
    for (std::size_t i = 0; i < c.size(); ++i)
      acc += w(ksq[i], s) * std::norm(c[i]);
  return acc;
}

double weight_canonical(long ksq, double s) {
  return std::pow(1.0 + kTwoPi * kTwoPi * static_cast<double>(ksq), s);
}

}  // namespace

const std::vector<long>& wavevector_sq_table(const TorusGrid& g) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::vector<long>> tables;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(g.dim, g.n);
  auto it = tables.find(key);
  if (it != tables.end()) return it->second;
  std::vector<long> t(g.size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = g.wavevector_sq(i);
  return tables.emplace(key, std::move(t)).first->second;
}

SpectralField to_spectral(const VectorField& f) {
  SpectralField out;
  out.grid = f.grid;
  for (int c = 0; c < 3; ++c) out.comp[c] = forward_component(f.grid, f.comp[c]);
  return out;
}

VectorField to_real(const SpectralField& f) {
  VectorField out;
  out.grid = f.grid;
  for (int c = 0; c < 3; ++c) out.comp[c] = backward_component(f.grid, f.comp[c]);
  return out;
}

SpectralScalar to_spectral(const ScalarField& f) {
  SpectralScalar out;
  out.grid = f.grid;
  out.values = forward_component(f.grid, f.values);
  return out;
}

ScalarField to_real(const SpectralScalar& f) {
  ScalarField out;
  out.grid = f.grid;
  out.values = backward_component(f.grid, f.values);
  return out;
}

VectorField laplacian(const VectorField& f) {
  SpectralField s = to_spectral(f);
  apply_isotropic(s, [](long ksq) {
    return -kTwoPi * kTwoPi * static_cast<double>(ksq);
  });
  return to_real(s);
}

VectorField bilaplacian(const VectorField& f) {
  SpectralField s = to_spectral(f);
  apply_isotropic(s, [](long ksq) {
    const double l = kTwoPi * kTwoPi * static_cast<double>(ksq);
    return l * l;
  });
  return to_real(s);
}

ScalarField laplacian(const ScalarField& f) {
  SpectralScalar s = to_spectral(f);
  apply_isotropic(s, [](long ksq) {
    return -kTwoPi * kTwoPi * static_cast<double>(ksq);
  });
  return to_real(s);
}

SpectralField derivative(const SpectralField& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim)
    throw PreconditionError("derivative: axis out of range");
  SpectralField out = f;
  for (int c = 0; c < 3; ++c) apply_axis_derivative(out.grid, out.comp[c], axis);
  return out;
}

SpectralScalar derivative(const SpectralScalar& f, int axis) {
  if (axis < 0 || axis >= f.grid.dim)
    throw PreconditionError("derivative: axis out of range");
  SpectralScalar out = f;
  apply_axis_derivative(out.grid, out.values, axis);
  return out;
}

VectorField derivative(const VectorField& f, int axis) {
  return to_real(derivative(to_spectral(f), axis));
}

ScalarField derivative(const ScalarField& f, int axis) {
  return to_real(derivative(to_spectral(f), axis));
}

ScalarField second_derivative(const ScalarField& f, int a, int b) {
  if (a < 0 || a >= f.grid.dim || b < 0 || b >= f.grid.dim)
    throw PreconditionError("second_derivative: axis out of range");
  SpectralScalar s = to_spectral(f);
  apply_axis_pair(f.grid, s.values, a, b);
  return to_real(s);
}

void project(SpectralField& f, const SpectralCutoff& cutoff) {
  if (cutoff.keeps_all(f.grid)) return;
  const auto& ksq = wavevector_sq_table(f.grid);
  for (auto& c : f.comp)
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!cutoff.keeps(ksq[i])) c[i] = {0.0, 0.0};
}

void project(SpectralScalar& f, const SpectralCutoff& cutoff) {
  if (cutoff.keeps_all(f.grid)) return;
  const auto& ksq = wavevector_sq_table(f.grid);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (!cutoff.keeps(ksq[i])) f.values[i] = {0.0, 0.0};
}

VectorField galerkin_project(const VectorField& f, const SpectralCutoff& cutoff) {
  if (cutoff.keeps_all(f.grid)) return f;
  SpectralField s = to_spectral(f);
  project(s, cutoff);
  return to_real(s);
}

SpectralField embed(const SpectralField& f, int n_new) {
  TorusGrid dst(f.grid.dim, n_new);
  if (dst == f.grid) return f;
  SpectralField out;
  out.grid = dst;
  for (int c = 0; c < 3; ++c)
    out.comp[c] = embed_component(f.grid, dst, f.comp[c]);
  return out;
}

VectorField resample(const VectorField& f, int n_new) {
  if (n_new == f.grid.n) return f;
  return to_real(embed(to_spectral(f), n_new));
}

double l2_norm(const VectorField& f) {
  double acc = 0.0;
  for (const auto& c : f.comp)
    for (double v : c) acc += v * v;
  return std::sqrt(acc / static_cast<double>(f.grid.size()));
}

double l2_norm(const ScalarField& f) {
  double acc = 0.0;
  for (double v : f.values) acc += v * v;
  return std::sqrt(acc / static_cast<double>(f.grid.size()));
}

double l2_inner(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid, b.grid, "l2_inner");
  double acc = 0.0;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < a.comp[c].size(); ++i)
      acc += a.comp[c][i] * b.comp[c][i];
  return acc / static_cast<double>(a.grid.size());
}

double l2_inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid, b.grid, "l2_inner");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    acc += a.values[i] * b.values[i];
  return acc / static_cast<double>(a.grid.size());
}

double linf_norm(const VectorField& f) {
  double best = 0.0;
  const std::size_t m = f.grid.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double v = f.comp[0][i] * f.comp[0][i] + f.comp[1][i] * f.comp[1][i] +
                     f.comp[2][i] * f.comp[2][i];
    if (v > best) best = v;
  }
  return std::sqrt(best);
}

double linf_norm(const ScalarField& f) {
  double best = 0.0;
  for (double v : f.values) best = std::max(best, std::abs(v));
  return best;
}

double sobolev_norm(const VectorField& f, double s) {
  return std::sqrt(spectral_weighted_sq(to_spectral(f), weight_canonical, s));
}

double sobolev_norm(const ScalarField& f, double s) {
  SpectralScalar sp = to_spectral(f);
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < sp.values.size(); ++i)
    acc += weight_canonical(ksq[i], s) * std::norm(sp.values[i]);
  return std::sqrt(acc);
}

namespace {

double dsum_weight(long ksq, int s) {
  const double l = kTwoPi * kTwoPi * static_cast<double>(ksq);
  double acc = 0.0, p = 1.0;
  for (int j = 0; j <= s; ++j) {
    acc += p;
    p *= l;
  }
  return acc;
}

double semi_weight(long ksq, int s) {
  const double l = kTwoPi * kTwoPi * static_cast<double>(ksq);
  double p = 1.0;
  for (int j = 0; j < s; ++j) p *= l;
  return p;
}

}  // namespace

double sobolev_norm_dsum(const VectorField& f, int s) {
  if (s < 0) throw PreconditionError("sobolev_norm_dsum: s must be >= 0");
  SpectralField sp = to_spectral(f);
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (const auto& c : sp.comp)
    for (std::size_t i = 0; i < c.size(); ++i)
      acc += dsum_weight(ksq[i], s) * std::norm(c[i]);
  return std::sqrt(acc);
}

double sobolev_norm_dsum(const ScalarField& f, int s) {
  if (s < 0) throw PreconditionError("sobolev_norm_dsum: s must be >= 0");
  SpectralScalar sp = to_spectral(f);
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < sp.values.size(); ++i)
    acc += dsum_weight(ksq[i], s) * std::norm(sp.values[i]);
  return std::sqrt(acc);
}

double sobolev_seminorm(const VectorField& f, int s) {
  if (s < 0) throw PreconditionError("sobolev_seminorm: s must be >= 0");
  SpectralField sp = to_spectral(f);
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (const auto& c : sp.comp)
    for (std::size_t i = 0; i < c.size(); ++i)
      acc += semi_weight(ksq[i], s) * std::norm(c[i]);
  return std::sqrt(acc);
}

double sobolev_seminorm(const ScalarField& f, int s) {
  if (s < 0) throw PreconditionError("sobolev_seminorm: s must be >= 0");
  SpectralScalar sp = to_spectral(f);
  const auto& ksq = wavevector_sq_table(f.grid);
  double acc = 0.0;
  for (std::size_t i = 0; i < sp.values.size(); ++i)
    acc += semi_weight(ksq[i], s) * std::norm(sp.values[i]);
  return std::sqrt(acc);
}

}  // namespace sllg
