#include "oldroyd/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace oldroyd {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct TransformEngine::Impl {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  std::size_t size = 0;

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

TransformEngine::TransformEngine(const Grid& grid)
    : grid_(grid), impl_(std::make_unique<Impl>()) {
  impl_->size = grid.size();
  impl_->in = fftw_alloc_complex(impl_->size);
  impl_->out = fftw_alloc_complex(impl_->size);
  std::lock_guard<std::mutex> lock(planner_mutex());
  impl_->fwd = fftw_plan_dft_2d(grid.n, grid.n, impl_->in, impl_->out,
                                FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_2d(grid.n, grid.n, impl_->in, impl_->out,
                                FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->fwd || !impl_->bwd)
    throw std::runtime_error("TransformEngine: FFTW plan creation failed");
}

TransformEngine::~TransformEngine() = default;

void TransformEngine::component_inverse(std::span<const Complex> in,
                                        std::span<double> out) const {
  if (in.size() != impl_->size || out.size() != impl_->size)
    throw std::invalid_argument("component_inverse: size mismatch");
  for (std::size_t k = 0; k < impl_->size; ++k) {
    impl_->in[k][0] = in[k].real();
    impl_->in[k][1] = in[k].imag();
  }
  fftw_execute(impl_->bwd);
  for (std::size_t k = 0; k < impl_->size; ++k) out[k] = impl_->out[k][0];
}

void TransformEngine::component_forward(std::span<const double> in,
                                        std::span<Complex> out) const {
  if (in.size() != impl_->size || out.size() != impl_->size)
    throw std::invalid_argument("component_forward: size mismatch");
  const double scale = 1.0 / static_cast<double>(impl_->size);
  for (std::size_t k = 0; k < impl_->size; ++k) {
    impl_->in[k][0] = in[k];
    impl_->in[k][1] = 0.0;
  }
  fftw_execute(impl_->fwd);
  for (std::size_t k = 0; k < impl_->size; ++k)
    out[k] = Complex{impl_->out[k][0] * scale, impl_->out[k][1] * scale};
}

PhysicalField TransformEngine::transform_inverse(const SpectralField& f) const {
  if (!(f.grid() == grid_))
    throw std::invalid_argument("transform_inverse: grid mismatch");
  PhysicalField out(grid_, f.rank());
  for (int c = 0; c < f.components(); ++c)
    component_inverse(f.comp(c), out.comp(c));
  return out;
}

SpectralField TransformEngine::transform_forward(const PhysicalField& f) const {
  if (!(f.grid() == grid_))
    throw std::invalid_argument("transform_forward: grid mismatch");
  SpectralField out(grid_, f.rank());
  for (int c = 0; c < f.components(); ++c)
    component_forward(f.comp(c), out.comp(c));
  enforce_reality(out);
  return out;
}

void enforce_reality(SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n;
  for (int c = 0; c < f.components(); ++c) {
    auto s = f.comp(c);
    // Nyquist rows carry no conjugate partner: drop them.
    for (int j = 0; j < n; ++j) s[g.at(n / 2, j)] = Complex{0.0, 0.0};
    for (int i = 0; i < n; ++i) s[g.at(i, n / 2)] = Complex{0.0, 0.0};
    // Project each +/- pair onto its Hermitian part.
    for (int i = 0; i < n; ++i) {
      const int ip = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jp = (n - j) % n;
        const std::size_t a = g.at(i, j);
        const std::size_t b = g.at(ip, jp);
        if (a > b) continue;
        if (a == b) {
          s[a] = Complex{s[a].real(), 0.0};
        } else {
          const Complex h = 0.5 * (s[a] + std::conj(s[b]));
          s[a] = h;
          s[b] = std::conj(h);
        }
      }
    }
  }
}

double reality_defect(const SpectralField& f) {
  const Grid& g = f.grid();
  const int n = g.n;
  double worst = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto s = f.comp(c);
    for (int i = 0; i < n; ++i) {
      const int ip = (n - i) % n;
      for (int j = 0; j < n; ++j) {
        const int jp = (n - j) % n;
        worst = std::max(worst, std::abs(s[g.at(i, j)] - std::conj(s[g.at(ip, jp)])));
      }
    }
  }
  return worst;
}

}  // namespace oldroyd
