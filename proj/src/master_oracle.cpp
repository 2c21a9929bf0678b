#include "deco/master_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace deco {

namespace {

constexpr int kMaxQubits = 6;

int popcount_i(int x) { return std::popcount(static_cast<unsigned>(x)); }

} // namespace

DensityMatrix DensityMatrix::ghz(int num_qubits, double phase) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("DensityMatrix::ghz: 1 <= L <= 6 required");
    const int dim = 1 << num_qubits;
    DensityMatrix rho;
    rho.dim = dim;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, {0.0, 0.0});
    const std::complex<double> ph = std::polar(1.0, phase);
    // (|0..0> + e^{i phase} |1..1>)(<0..0| + e^{-i phase} <1..1|) / 2
    rho(0, 0) = 0.5;
    rho(dim - 1, dim - 1) = 0.5;
    rho(dim - 1, 0) = 0.5 * ph;
    rho(0, dim - 1) = 0.5 * std::conj(ph);
    return rho;
}

DensityMatrix DensityMatrix::plus_product(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("DensityMatrix::plus_product: 1 <= L <= 6 required");
    const int dim = 1 << num_qubits;
    DensityMatrix rho;
    rho.dim = dim;
    const double v = 1.0 / dim;
    rho.entries.assign(static_cast<std::size_t>(dim) * dim, {v, 0.0});
    return rho;
}

double DensityMatrix::trace_deviation() const {
    std::complex<double> tr = 0.0;
    for (int i = 0; i < dim; ++i) tr += (*this)(i, i);
    return std::abs(tr - 1.0);
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c)
            worst = std::max(worst,
                             std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return worst;
}

DephasingGenerator make_generator(const NoiseEnvironment& env, double omega) {
    DephasingGenerator gen;
    gen.collective_rate = [s = env.collective](double t) {
        return 0.25 * s.exponent_time_derivative(t);
    };
    gen.local_rate = [s = env.local](double t) {
        return 0.25 * s.exponent_time_derivative(t);
    };
    gen.omega = omega;
    return gen;
}

DensityMatrix evolve(const DensityMatrix& initial, const DephasingGenerator& gen,
                     int num_qubits, double t_final, double tol) {
    if (num_qubits < 1 || num_qubits > kMaxQubits)
        throw std::invalid_argument("evolve: 1 <= L <= 6 required");
    if (!(tol >= 1e-12 && tol <= 1e-6))
        throw std::invalid_argument("evolve: tol must lie in [1e-12, 1e-6]");
    if (t_final < 0.0) throw std::domain_error("evolve: t_final must be >= 0");
    const int dim = 1 << num_qubits;
    if (initial.dim != dim)
        throw std::invalid_argument("evolve: dimension mismatch");

    // Per-element structure of the generator.
    const std::size_t n = initial.entries.size();
    std::vector<double> dm(n), ham(n);
    for (int x = 0; x < dim; ++x) {
        const int mx = 2 * popcount_i(x) - num_qubits;
        for (int y = 0; y < dim; ++y) {
            const int my = 2 * popcount_i(y) - num_qubits;
            dm[static_cast<std::size_t>(x) * dim + y] = mx - my;
            ham[static_cast<std::size_t>(x) * dim + y] = popcount_i(x ^ y);
        }
    }

    auto rhs = [&](double t, const std::vector<std::complex<double>>& rho,
                   std::vector<std::complex<double>>& drho) {
        const double C = gen.collective_rate(t);
        const double c = gen.local_rate(t);
        if (!std::isfinite(C) || !std::isfinite(c))
            throw std::runtime_error("evolve: non-finite rate function value");
        for (std::size_t i = 0; i < rho.size(); ++i) {
            const std::complex<double> lambda(-C * dm[i] * dm[i] - 4.0 * c * ham[i],
                                              -0.5 * gen.omega * dm[i]);
            drho[i] = lambda * rho[i];
        }
    };

    // Cash-Karp embedded RK4(5).
    static constexpr double a2 = 1.0 / 5, a3 = 3.0 / 10, a4 = 3.0 / 5, a5 = 1.0,
                            a6 = 7.0 / 8;
    static constexpr double b21 = 1.0 / 5;
    static constexpr double b31 = 3.0 / 40, b32 = 9.0 / 40;
    static constexpr double b41 = 3.0 / 10, b42 = -9.0 / 10, b43 = 6.0 / 5;
    static constexpr double b51 = -11.0 / 54, b52 = 5.0 / 2, b53 = -70.0 / 27,
                            b54 = 35.0 / 27;
    static constexpr double b61 = 1631.0 / 55296, b62 = 175.0 / 512,
                            b63 = 575.0 / 13824, b64 = 44275.0 / 110592,
                            b65 = 253.0 / 4096;
    static constexpr double c1 = 37.0 / 378, c3 = 250.0 / 621, c4 = 125.0 / 594,
                            c6 = 512.0 / 1771;
    static constexpr double d1 = c1 - 2825.0 / 27648, d3 = c3 - 18575.0 / 48384,
                            d4 = c4 - 13525.0 / 55296, d5 = -277.0 / 14336,
                            d6 = c6 - 1.0 / 4;

    std::vector<std::complex<double>> y = initial.entries;
    std::vector<std::complex<double>> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n),
        tmp(n), ynew(n);

    double t = 0.0;
    double h = t_final > 0.0 ? t_final / 64.0 : 0.0;
    int steps = 0;
    while (t < t_final) {
        if (++steps > 2'000'000)
            throw std::runtime_error("evolve: step budget exhausted");
        h = std::min(h, t_final - t);

        rhs(t, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * b21 * k1[i];
        rhs(t + a2 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (b31 * k1[i] + b32 * k2[i]);
        rhs(t + a3 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (b41 * k1[i] + b42 * k2[i] + b43 * k3[i]);
        rhs(t + a4 * h, tmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (b51 * k1[i] + b52 * k2[i] + b53 * k3[i] + b54 * k4[i]);
        rhs(t + a5 * h, tmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = y[i] + h * (b61 * k1[i] + b62 * k2[i] + b63 * k3[i] +
                                 b64 * k4[i] + b65 * k5[i]);
        rhs(t + a6 * h, tmp, k6);

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ynew[i] = y[i] + h * (c1 * k1[i] + c3 * k3[i] + c4 * k4[i] + c6 * k6[i]);
            const std::complex<double> e =
                h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i]);
            const double scale = std::max({std::abs(y[i]), std::abs(ynew[i]), 1e-3});
            err = std::max(err, std::abs(e) / (scale * tol));
        }

        if (err <= 1.0) {
            t += h;
            std::swap(y, ynew);
        }
        const double factor =
            err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    DensityMatrix out;
    out.dim = dim;
    out.entries = std::move(y);
    return out;
}

double oracle_probability(const ProbeConfig& probe, const NoiseEnvironment& env,
                          double t, double tol) {
    const bool ghz = probe.state_family == StateFamily::GHZ;
    const int L = ghz ? probe.num_qubits : 1;
    if (L > kMaxQubits)
        throw std::invalid_argument("oracle_probability: L <= 6 required");
    const DephasingGenerator gen = make_generator(env, probe.qubit_frequency_omega);
    const DensityMatrix rho0 = DensityMatrix::ghz(L, 0.0);
    const DensityMatrix rho = evolve(rho0, gen, L, t, tol);
    const int dim = rho.dim;
    // |psi_read> = (|0..0> + e^{-i phi} |1..1>)/sqrt(2); the -phi read phase
    // reproduces P = (1 + m cos(L omega t - phi))/2.
    const std::complex<double> ph = std::polar(1.0, -probe.readout_phase_phi);
    const std::complex<double> p =
        0.5 * (rho(0, 0) + rho(dim - 1, dim - 1)) +
        0.5 * (ph * rho(0, dim - 1) + std::conj(ph) * rho(dim - 1, 0));
    return p.real();
}

} // namespace deco
