#include "owcsim/optics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace owcsim::optics {

using std::numbers::pi;

double rayleigh_range(double w0, double wavelength) {
  if (!(w0 > 0.0) || !(wavelength > 0.0))
    throw std::invalid_argument("rayleigh_range: w0 and wavelength must be > 0");
  return pi * w0 * w0 / wavelength;
}

BeamState beam_at_waist(double w0, double wavelength, double power) {
  if (!(power > 0.0)) throw std::invalid_argument("beam power must be > 0");
  return {std::complex<double>(0.0, rayleigh_range(w0, wavelength)),
          wavelength, power};
}

BeamState transform_beam(const BeamState& beam, const OpticalElement& element) {
  BeamState out = beam;
  if (const auto* fs = std::get_if<FreeSpace>(&element)) {
    if (fs->distance < 0.0)
      throw std::invalid_argument("free-space distance must be >= 0");
    out.q = beam.q + fs->distance;
  } else {
    const auto& lens = std::get<ThinLens>(element);
    if (lens.focal_length == 0.0)
      throw std::invalid_argument("thin lens focal length must be non-zero");
    out.q = 1.0 / (1.0 / beam.q - 1.0 / lens.focal_length);
  }
  assert(out.q.imag() > 0.0);
  return out;
}

double beam_radius(const BeamState& beam) {
  const double inv_q_imag = (1.0 / beam.q).imag();
  return std::sqrt(-beam.wavelength / (pi * inv_q_imag));
}

double gaussian_irradiance(double power, double radius_w, double r_offaxis) {
  const double w2 = radius_w * radius_w;
  return 2.0 * power / (pi * w2) * std::exp(-2.0 * r_offaxis * r_offaxis / w2);
}

double erf_difference(double lo, double hi) {
  if (lo >= 0.0) return std::erfc(lo) - std::erfc(hi);
  if (hi <= 0.0) return std::erfc(-hi) - std::erfc(-lo);
  return std::erf(hi) - std::erf(lo);
}

double collect_power_square_aperture(double offset_x, double offset_y,
                                     double radius_w, double power,
                                     double half_side_a) {
  const double s = std::numbers::sqrt2 / radius_w;
  // Symmetric in the sign of the offset; fold to keep the tail on one side.
  const double x0 = std::abs(offset_x);
  const double y0 = std::abs(offset_y);
  const double span_x = erf_difference(s * (x0 - half_side_a), s * (x0 + half_side_a));
  const double span_y = erf_difference(s * (y0 - half_side_a), s * (y0 + half_side_a));
  return 0.25 * power * span_x * span_y;
}

double lambertian_los_gain(double order_m, double detector_area,
                           double distance, double cos_emit, double cos_incid,
                           double fov_half_angle) {
  const double incidence = std::acos(std::clamp(cos_incid, -1.0, 1.0));
  if (incidence > fov_half_angle || cos_emit <= 0.0) return 0.0;
  return (order_m + 1.0) * detector_area / (2.0 * pi * distance * distance) *
         std::pow(cos_emit, order_m) * cos_incid;
}

BeamState propagate_vcsel_element(const VcselArrayParams& vcsel,
                                  double link_distance) {
  BeamState beam = beam_at_waist(vcsel.beam_waist_w0, vcsel.wavelength,
                                 vcsel.optical_power_per_element);
  beam = transform_beam(beam, FreeSpace{vcsel.vcsel_to_lens});
  beam = transform_beam(beam, ThinLens{vcsel.lens_focal_length});
  return transform_beam(beam, FreeSpace{link_distance});
}

double array_spot_area(const VcselArrayParams& vcsel, double link_distance) {
  const double w = beam_radius(propagate_vcsel_element(vcsel, link_distance));
  const double side = std::sqrt(static_cast<double>(vcsel.n_elements));
  const double r = w + vcsel.pitch * (side - 1.0) / 2.0;
  return pi * r * r;
}

}  // namespace owcsim::optics
