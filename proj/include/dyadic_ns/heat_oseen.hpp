#pragma once

#include <cstddef>
#include <span>

#include "dyadic_ns/spectral_field.hpp"
#include "dyadic_ns/time_series.hpp"

namespace dyadic_ns {

/// e^{t Delta} f: multiplier e^{-t |k|^2}. Throws for t < 0.
SpectralField heat_apply(const SpectralField& f, double t);

/// t -> e^{t Delta} u0 on every node, with u0 as the t = 0 snapshot.
TimeSeriesField heat_trajectory(const SpectralField& u0, const TimeGrid& times);

/// Closed-form weights of the exponential integrator on one interval of
/// length h: int_a^b e^{-lambda (b - s)} g(s) ds = left g(a) + right g(b)
/// for g linear on [a, b]; decay = e^{-lambda h}.
struct ExpLinearWeights {
  double decay;
  double left;
  double right;
};
ExpLinearWeights exp_linear_weights(double lambda, double h);

/// P div F for a tensor F with (div F)_i = sum_k d_k F[k*dim + i].
SpectralField projected_divergence(const SpectralField& tensor);

/// Per-mode Duhamel integral int_{t_start}^{t} e^{(t-s) Delta} G(s) ds of a
/// series G, with G linear in s between samples. start = 0 integrates from
/// s = 0 using G's initial snapshot (or, lacking one, the first node value);
/// start = l >= 1 integrates from node l - 1, and outputs at earlier nodes are
/// zero. The output carries a zero initial snapshot when start = 0.
TimeSeriesField duhamel_integral(const TimeSeriesField& forcing, std::size_t start = 0);

/// Oseen operator: -int_0^t e^{(t-s) Delta} P div F(s) ds for a tensor series F.
TimeSeriesField oseen_apply(const TimeSeriesField& tensor_series, std::size_t start = 0);

/// B(u, v) = oseen_apply(u (x) v) with dealiased per-node products.
TimeSeriesField bilinear_B(const TimeSeriesField& u, const TimeSeriesField& v);

/// L1 norm (over one period) of the kernel of e^{t Delta} P d_1, obtained by
/// applying the operator to a discrete delta. Reference grids: n = 256 for
/// dim = 2, n = 64 for dim = 3.
double oseen_kernel_l1(double t, int dim = 2);
double oseen_kernel_l1(double t, const Grid& grid);

/// L(f)(t) = int_0^t f(s) / (sqrt(t - s) sqrt(s)) ds for f sampled on the
/// nodes, f linearly interpolated between nodes and held at f(t_1) on
/// [0, t_1]. With s = t sin^2(theta) the weight becomes 2 dtheta and every
/// linear piece integrates in closed form, so the result is exact for the
/// interpolant.
double singular_convolution_L(std::span<const double> samples, const TimeGrid& times, std::size_t node);
/// Same, addressed by time; throws std::invalid_argument if t is not a node.
double singular_convolution_L_at(std::span<const double> samples, const TimeGrid& times, double t);
/// Composite 4-point Gauss-Legendre of the same interpolant, with the theta
/// range split at the node angles asin(sqrt(t_m / t)) and each piece cut into
/// `panels` equal panels. Independent reference path for the closed form.
double singular_convolution_L_quadrature(std::span<const double> samples, const TimeGrid& times,
                                         std::size_t node, int panels = 1);

}  // namespace dyadic_ns
