#include "selfsim/spectral.hpp"

#include "selfsim/error.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace selfsim::spectral {
namespace {

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans are cached per (n, sign) and created under the lock.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct PlanDeleter {
    void operator()(fftw_plan_s* p) const noexcept {
        if (p) fftw_destroy_plan(p);
    }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
    void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};

class Buffer {
public:
    explicit Buffer(std::size_t n)
        : n_(n), data_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
        if (!data_) throw std::bad_alloc();
    }
    fftw_complex* get() noexcept { return data_.get(); }
    std::size_t size() const noexcept { return n_; }

private:
    std::size_t n_;
    std::unique_ptr<fftw_complex, FftwFree> data_;
};

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, PlanHandle> cache;
    std::lock_guard lock(planner_mutex());
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second.get();
    Buffer in(n);
    Buffer out(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(), sign, FFTW_ESTIMATE);
    if (!p) fail(ErrorCode::InvalidArgument, "FFTW could not create a plan");
    cache.emplace(key, PlanHandle(p));
    return p;
}

cvec execute(std::span<const std::complex<double>> data, int sign) {
    const std::size_t n = data.size();
    Buffer in(n);
    Buffer out(n);
    std::memcpy(in.get(), data.data(), sizeof(fftw_complex) * n);
    fftw_execute_dft(plan_for(n, sign), in.get(), out.get());
    cvec result(n);
    std::memcpy(static_cast<void*>(result.data()), out.get(), sizeof(fftw_complex) * n);
    return result;
}

void require_size(std::size_t n) {
    if (n < 8) fail(ErrorCode::GridTooSmall, "spectral transforms need at least 8 points");
}

}  // namespace

cvec forward(std::span<const std::complex<double>> data) {
    require_size(data.size());
    return execute(data, FFTW_FORWARD);
}

cvec forward(std::span<const double> data) {
    cvec c(data.begin(), data.end());
    return forward(std::span<const std::complex<double>>(c));
}

cvec inverse(std::span<const std::complex<double>> amplitudes) {
    require_size(amplitudes.size());
    cvec r = execute(amplitudes, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(amplitudes.size());
    for (auto& v : r) v *= scale;
    return r;
}

SpectralField transform(const RealField& field) {
    return SpectralField(field.grid, forward(std::span<const double>(field.values)));
}

SpectralField transform(const ComplexField& field) {
    return SpectralField(field.grid, forward(std::span<const std::complex<double>>(field.values)));
}

RealField to_real(const SpectralField& spectrum) {
    const cvec c = inverse(spectrum.amplitudes);
    std::vector<double> v(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) v[i] = c[i].real();
    return RealField(spectrum.grid, std::move(v));
}

ComplexField to_complex(const SpectralField& spectrum) {
    return ComplexField(spectrum.grid, inverse(spectrum.amplitudes));
}

RealField apply_symbol(const RealField& field, const RealSymbol& m) {
    SpectralField s = transform(field);
    for (std::size_t j = 0; j < s.amplitudes.size(); ++j) s.amplitudes[j] *= m(field.grid.k(j));
    return to_real(s);
}

ComplexField apply_symbol(const RealField& field, const ComplexSymbol& m, bool real_output) {
    SpectralField s = transform(field);
    for (std::size_t j = 0; j < s.amplitudes.size(); ++j) {
        std::complex<double> mj = m(field.grid.k(j));
        if (real_output && field.grid.is_nyquist(j)) mj = mj.real();
        s.amplitudes[j] *= mj;
    }
    return to_complex(s);
}

ComplexField kernel_from_symbol(const Grid1D& grid, const ComplexSymbol& m) {
    const std::size_t n = grid.size();
    cvec a(n);
    // x_i = x_min + i dx, so e^{i k_j x_i} = e^{i k_j x_min} e^{2 pi i ij/n}.
    for (std::size_t j = 0; j < n; ++j) {
        const double k = grid.k(j);
        a[j] = m(k) * std::polar(1.0, k * grid.x_min());
    }
    cvec c = inverse(a);
    const double scale = static_cast<double>(n) / grid.length();  // (1/n dx) sum = (1/L) sum
    for (auto& v : c) v *= scale;
    return ComplexField(grid, std::move(c));
}

RealField kernel_from_symbol(const Grid1D& grid, const RealSymbol& m) {
    const std::size_t n = grid.size();
    cvec a(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = grid.k(j);
        // Even symbols: the unpaired Nyquist bin contributes m cos(k x).
        const double phase = k * grid.x_min();
        a[j] = grid.is_nyquist(j) ? std::complex<double>(m(k) * std::cos(phase), 0.0)
                                  : m(k) * std::polar(1.0, phase);
    }
    cvec c = inverse(a);
    const double scale = static_cast<double>(n) / grid.length();
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = c[i].real() * scale;
    return RealField(grid, std::move(v));
}

std::vector<double> convolve(std::span<const double> a, std::span<const double> b) {
    const std::size_t need = a.size() + b.size() - 1;
    std::size_t n = 8;
    while (n < need) n *= 2;
    cvec pa(n), pb(n);
    for (std::size_t i = 0; i < a.size(); ++i) pa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) pb[i] = b[i];
    cvec fa = forward(std::span<const std::complex<double>>(pa));
    const cvec fb = forward(std::span<const std::complex<double>>(pb));
    for (std::size_t j = 0; j < n; ++j) fa[j] *= fb[j];
    const cvec c = inverse(fa);
    std::vector<double> out(need);
    for (std::size_t i = 0; i < need; ++i) out[i] = c[i].real();
    return out;
}

}  // namespace selfsim::spectral
