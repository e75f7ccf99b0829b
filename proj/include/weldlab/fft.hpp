#pragma once
// Thin FFTW wrapper: complex 2D transforms for the spectral Beurling step and
// 1D transforms for boundary Fourier series. Planning goes through one mutex
// (FFTW planning is not thread safe); execution copies through an internal
// FFTW-allocated buffer so caller arrays need no special alignment. All
// transforms run single threaded, keeping results bit-reproducible.

#include <fftw3.h>

#include <mutex>
#include <vector>

#include "weldlab/mobius.hpp"

namespace weldlab {

inline std::mutex& fftw_plan_mutex() {
    static std::mutex m;
    return m;
}

class Fft2D {
public:
    explicit Fft2D(int n) : n_(n) {
        buf_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * size()));
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
        inv_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Fft2D() {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
        fftw_free(buf_);
    }
    Fft2D(const Fft2D&) = delete;
    Fft2D& operator=(const Fft2D&) = delete;

    [[nodiscard]] size_t size() const { return static_cast<size_t>(n_) * static_cast<size_t>(n_); }

    void forward(std::vector<cpx>& data) { run(fwd_, data, false); }
    // inverse includes the 1/n^2 factor
    void inverse(std::vector<cpx>& data) { run(inv_, data, true); }

private:
    void run(fftw_plan plan, std::vector<cpx>& data, bool normalize) {
        auto* b = reinterpret_cast<cpx*>(buf_);
        std::copy(data.begin(), data.end(), b);
        fftw_execute(plan);
        const double scale = normalize ? 1.0 / static_cast<double>(size()) : 1.0;
        for (size_t i = 0; i < size(); ++i) data[i] = b[i] * scale;
    }

    int n_;
    fftw_complex* buf_;
    fftw_plan fwd_, inv_;
};

// Trigonometric interpolant of real samples on the uniform angle grid,
// stored as the forward DFT of the samples.
struct TrigSeries {
    std::vector<cpx> modes;
    int n = 0;

    [[nodiscard]] double eval(double theta) const {
        double acc = modes[0].real() / n;
        for (int m = 1; m < n / 2; ++m) {
            const cpx c = modes[static_cast<size_t>(m)] / static_cast<double>(n);
            acc += 2.0 * (c * std::polar(1.0, m * theta)).real();
        }
        acc += (modes[static_cast<size_t>(n) / 2].real() / n) * std::cos((n / 2) * theta);
        return acc;
    }

    [[nodiscard]] double eval_deriv(double theta) const {
        double acc = 0.0;
        for (int m = 1; m < n / 2; ++m) {
            const cpx c = modes[static_cast<size_t>(m)] / static_cast<double>(n);
            acc += 2.0 * (cpx(0.0, static_cast<double>(m)) * c * std::polar(1.0, m * theta)).real();
        }
        acc -= (modes[static_cast<size_t>(n) / 2].real() / n) * (n / 2) * std::sin((n / 2) * theta);
        return acc;
    }
};

// conjugate-function multiplier in place: maps the spectrum of a real field
// to the spectrum of its harmonic conjugate, for the harmonic extension to
// the exterior disk (interior=false) or the interior disk (interior=true);
// mean and Nyquist are annihilated either way.
inline void conjugate_spectrum(std::vector<cpx>& modes, bool interior) {
    const int n = static_cast<int>(modes.size());
    const cpx pos = interior ? cpx(0.0, -1.0) : cpx(0.0, 1.0);
    for (int m = 1; m < n / 2; ++m) {
        modes[static_cast<size_t>(m)] *= pos;
        modes[static_cast<size_t>(n - m)] *= -pos;
    }
    modes[0] = 0.0;
    modes[static_cast<size_t>(n) / 2] = 0.0;
}

inline void fft_1d(std::vector<cpx>& data, bool inverse) {
    const int n = static_cast<int>(data.size());
    auto* buf = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * data.size()));
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_1d(n, buf, buf, inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                FFTW_ESTIMATE);
    }
    auto* b = reinterpret_cast<cpx*>(buf);
    std::copy(data.begin(), data.end(), b);
    fftw_execute(plan);
    const double scale = inverse ? 1.0 / n : 1.0;
    for (size_t i = 0; i < data.size(); ++i) data[i] = b[i] * scale;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
        fftw_free(buf);
    }
}

}  // namespace weldlab
