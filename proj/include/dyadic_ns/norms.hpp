#pragma once

#include <limits>

#include "dyadic_ns/spectral_field.hpp"
#include "dyadic_ns/time_series.hpp"

namespace dyadic_ns {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct BesovParams {
  double s = 0.0;
  double q = kInfinity;
};

/// Normalized-measure (average) L^q norm; vector and tensor fields use the
/// pointwise Euclidean magnitude. q = infinity is the max over grid samples.
double lebesgue_norm(const SpectralField& f, double q);

/// (sum_k (1 + |k|^2)^s |c(k)|^2)^{1/2}, summed over components.
double sobolev_norm(const SpectralField& f, double s);

/// sup_{j = -1..J} 2^{js} ||Delta_j f||_q.
double besov_norm(const SpectralField& f, double s, double q);
inline double besov_norm(const SpectralField& f, const BesovParams& p) { return besov_norm(f, p.s, p.q); }

/// Heat characterization of the B^{-s}_q norm: max over n_theta geometric
/// samples theta in [delta 2^{-2J-2}, delta] of theta^{s/2} ||e^{theta Delta} f||_q.
/// Below the sample floor the semigroup is the identity to within the
/// band-limit, so the lower samples add nothing.
double heat_char_norm(const SpectralField& f, double s, double q, double delta = 1.0, int n_theta = 64);

/// Blockwise-first mixed norm: sup_j 2^{js} (int_0^T ||Delta_j v(t)||_q^p dt)^{1/p}
/// with the time grid's quadrature; p = infinity is the max over nodes.
double chemin_lerner_norm(const TimeSeriesField& v, double p, double s, double q);

/// max over nodes of t^{mu/2} ||v(t)||_inf.
double weighted_sup_norm(const TimeSeriesField& v, double mu);

/// Torus surrogate of the uniformly local L^p norm: max over ball centers of
/// the L^p average of f over the ball of radius R. Centers form a lattice of
/// spacing R / centers_per_radius, each snapped to the nearest grid point, so
/// every ball holds the same number of samples.
double uloc_norm(const SpectralField& f, double p, double radius, int centers_per_radius = 2);

}  // namespace dyadic_ns
