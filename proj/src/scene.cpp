#include "crossim/scene.hpp"

#include <algorithm>
#include <cmath>

#include "crossim/errors.hpp"

namespace crossim {

double TestInput::gene(int i) const {
  switch (i) {
    case 0: return car_speed;
    case 1: return ped_x;
    case 2: return ped_y;
    case 3: return ped_heading_deg;
    case 4: return ped_speed;
  }
  throw DataError("gene index out of range");
}

void TestInput::set_gene(int i, double v) {
  switch (i) {
    case 0: car_speed = v; return;
    case 1: ped_x = v; return;
    case 2: ped_y = v; return;
    case 3: ped_heading_deg = v; return;
    case 4: ped_speed = v; return;
  }
  throw DataError("gene index out of range");
}

const char* TestInput::gene_name(int i) {
  static const char* names[TestInput::kGenes] = {"v0c", "x0p", "y0p", "theta_p", "v0p"};
  if (i < 0 || i >= kGenes) throw DataError("gene index out of range");
  return names[i];
}

bool InputSpace::contains(const TestInput& in) const {
  for (int i = 0; i < TestInput::kGenes; ++i) {
    double v = in.gene(i);
    if (v < range[i].lo || v > range[i].hi) return false;
  }
  return true;
}

TestInput InputSpace::clamp(const TestInput& in) const {
  TestInput out = in;
  for (int i = 0; i < TestInput::kGenes; ++i)
    out.set_gene(i, std::clamp(in.gene(i), range[i].lo, range[i].hi));
  return out;
}

TestInput InputSpace::sample(Rng& rng) const {
  TestInput out;
  for (int i = 0; i < TestInput::kGenes; ++i)
    out.set_gene(i, uniform_in(rng, range[i].lo, range[i].hi));
  return out;
}

void InputSpace::validate() const {
  for (int i = 0; i < TestInput::kGenes; ++i)
    if (!(range[i].lo <= range[i].hi))
      throw ConfigError(std::string("empty range for gene ") + TestInput::gene_name(i));
}

bool FrameSpec::is_identity() const {
  return origin_x == 0.0 && origin_y == 0.0 && heading_zero_deg == 0.0 && !clockwise &&
         speed_unit == SpeedUnit::MetersPerSecond;
}

namespace {
double speed_factor(SpeedUnit unit) {
  return unit == SpeedUnit::KilometersPerHour ? 3.6 : 1.0;
}
}  // namespace

TestInput to_canonical(const TestInput& in, const FrameSpec& frame) {
  double sense = frame.clockwise ? -1.0 : 1.0;
  double f = speed_factor(frame.speed_unit);
  TestInput out;
  out.car_speed = in.car_speed / f;
  out.ped_x = in.ped_x - frame.origin_x;
  out.ped_y = in.ped_y - frame.origin_y;
  out.ped_heading_deg = frame.heading_zero_deg + sense * in.ped_heading_deg;
  out.ped_speed = in.ped_speed / f;
  return out;
}

TestInput from_canonical(const TestInput& in, const FrameSpec& frame) {
  double sense = frame.clockwise ? -1.0 : 1.0;
  double f = speed_factor(frame.speed_unit);
  TestInput out;
  out.car_speed = in.car_speed * f;
  out.ped_x = in.ped_x + frame.origin_x;
  out.ped_y = in.ped_y + frame.origin_y;
  // heading_zero + sense * a = theta  =>  a = sense * (theta - heading_zero)
  out.ped_heading_deg = sense * (in.ped_heading_deg - frame.heading_zero_deg);
  out.ped_speed = in.ped_speed * f;
  return out;
}

TestInput translate_input(const TestInput& in, const FrameSpec& from, const FrameSpec& to) {
  return from_canonical(to_canonical(in, from), to);
}

InputSpace translate_space(const InputSpace& space, const FrameSpec& from, const FrameSpec& to) {
  // Every gene maps through its own affine function, so translating the two
  // corner points and re-sorting per gene is exact.
  TestInput lo, hi;
  for (int i = 0; i < TestInput::kGenes; ++i) {
    lo.set_gene(i, space.range[i].lo);
    hi.set_gene(i, space.range[i].hi);
  }
  TestInput tlo = translate_input(lo, from, to);
  TestInput thi = translate_input(hi, from, to);
  InputSpace out;
  for (int i = 0; i < TestInput::kGenes; ++i) {
    out.range[i].lo = std::min(tlo.gene(i), thi.gene(i));
    out.range[i].hi = std::max(tlo.gene(i), thi.gene(i));
  }
  return out;
}

void SceneConfig::validate() const {
  if (road_length <= 0.0) throw ConfigError("scene.road_length must be positive");
  if (lane_width <= 0.0) throw ConfigError("scene.lane_width must be positive");
  if (car_length <= 0.0 || car_width <= 0.0)
    throw ConfigError("scene car dimensions must be positive");
  if (ped_radius < 0.0) throw ConfigError("scene.ped_radius must be non-negative");
}

InputSpace default_input_space(const SceneConfig& scene) {
  InputSpace space;
  space.range[0] = {1.0, 25.0};                                    // ego speed m/s
  space.range[1] = {scene.car_x + 20.0, scene.car_x + 85.0};       // ped ahead of the car
  space.range[2] = {scene.car_y - 15.0, scene.car_y - 2.0};        // near side of the road
  space.range[3] = {40.0, 160.0};                                  // roughly crossing
  space.range[4] = {1.0, 5.0};                                     // walking/jogging speed
  return space;
}

}  // namespace crossim
