#pragma once

#include <complex>
#include <variant>

#include "owcsim/scenario.hpp"

namespace owcsim::optics {

/// Gaussian beam described by its complex beam parameter q = z + i*z_R,
/// where z is the distance past the waist and z_R the Rayleigh range.
struct BeamState {
  std::complex<double> q;
  double wavelength = 0.0;
  double total_power = 0.0;
};

struct FreeSpace {
  double distance = 0.0;
};

struct ThinLens {
  double focal_length = 0.0;
};

using OpticalElement = std::variant<FreeSpace, ThinLens>;

/// pi * w0^2 / wavelength.
double rayleigh_range(double w0, double wavelength);

/// Beam at its waist with 1/e^2 radius w0.
BeamState beam_at_waist(double w0, double wavelength, double power);

/// ABCD transform: free space adds to q, a thin lens subtracts 1/f from 1/q.
BeamState transform_beam(const BeamState& beam, const OpticalElement& element);

/// 1/e^2 intensity radius: W^2 = -wavelength / (pi * Im(1/q)).
double beam_radius(const BeamState& beam);

/// TEM00 irradiance (2P / pi W^2) exp(-2 r^2 / W^2).
double gaussian_irradiance(double power, double radius_w, double r_offaxis);

/// erf(hi) - erf(lo), evaluated through erfc in the tails so that the
/// difference keeps its relative precision far from the origin.
double erf_difference(double lo, double hi);

/// Power of a circular Gaussian beam landing inside the square
/// |x - x0| <= a, |y - y0| <= a, where (x0, y0) is the beam axis relative
/// to the square's center. Closed form (separable erf product).
double collect_power_square_aperture(double offset_x, double offset_y,
                                     double radius_w, double power,
                                     double half_side_a);

/// Lambertian LOS DC gain (m+1) A / (2 pi d^2) cos^m(phi) cos(psi),
/// exactly 0 when the incidence angle psi exceeds the FOV half-angle.
double lambertian_los_gain(double order_m, double detector_area,
                           double distance, double cos_emit, double cos_incid,
                           double fov_half_angle);

/// One VCSEL element beam after the micro-lens chain and `link_distance`
/// of free space.
BeamState propagate_vcsel_element(const VcselArrayParams& vcsel,
                                  double link_distance);

/// 1/e^2 footprint of the whole array on a plane `link_distance` below the
/// lens: pi * (W + pitch * (sqrt(n) - 1) / 2)^2.
double array_spot_area(const VcselArrayParams& vcsel, double link_distance);

}  // namespace owcsim::optics
