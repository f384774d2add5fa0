#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "crossim/rng.hpp"

namespace crossim {

/// One concrete test scenario: the free variables of the scene. Positions
/// and speeds are expressed in the frame of whichever backend the input is
/// destined for; use to_canonical / from_canonical to move between frames.
struct TestInput {
  double car_speed = 0.0;        // initial ego speed
  double ped_x = 0.0;            // pedestrian start position
  double ped_y = 0.0;
  double ped_heading_deg = 0.0;  // walking direction
  double ped_speed = 0.0;

  static constexpr int kGenes = 5;

  double gene(int i) const;
  void set_gene(int i, double v);

  /// Column names used in CSV artifacts, index-aligned with gene().
  static const char* gene_name(int i);
};

struct GeneRange {
  double lo = 0.0;
  double hi = 0.0;
};

/// Box constraints for the five scenario genes, in a specific frame.
struct InputSpace {
  std::array<GeneRange, TestInput::kGenes> range{};

  bool contains(const TestInput& in) const;
  TestInput clamp(const TestInput& in) const;
  TestInput sample(Rng& rng) const;
  void validate() const;  // throws ConfigError on lo > hi
};

enum class SpeedUnit { MetersPerSecond, KilometersPerHour };

/// How a backend expresses scene coordinates relative to the canonical frame
/// (ego starts at the canonical origin heading +x, speeds in m/s, headings
/// counter-clockwise from +x).
struct FrameSpec {
  double origin_x = 0.0;  // canonical origin expressed in this frame
  double origin_y = 0.0;
  double heading_zero_deg = 0.0;  // canonical heading that this frame calls 0
  bool clockwise = false;         // frame angles grow clockwise
  SpeedUnit speed_unit = SpeedUnit::MetersPerSecond;

  bool is_identity() const;
  static FrameSpec canonical() { return {}; }
};

TestInput to_canonical(const TestInput& in, const FrameSpec& frame);
TestInput from_canonical(const TestInput& in, const FrameSpec& frame);

/// Re-express an input given in frame `from` in frame `to`.
TestInput translate_input(const TestInput& in, const FrameSpec& from, const FrameSpec& to);
InputSpace translate_space(const InputSpace& space, const FrameSpec& from, const FrameSpec& to);

/// Static scene geometry shared by every backend (canonical frame).
struct SceneConfig {
  double car_x = 0.0;  // initial ego reference point (footprint centre)
  double car_y = 0.0;
  double road_length = 100.0;   // ego run ends after covering this distance
  double lane_width = 3.5;
  double car_length = 4.0;
  double car_width = 1.8;
  double ped_radius = 0.3;      // pedestrian body disc
  double crossing_offset = 1.75;  // "crossed" once ped_y >= car_y + this

  double crossed_y() const { return car_y + crossing_offset; }
  double collision_radius() const { return ped_radius + 0.5 * car_width; }
  void validate() const;
};

/// The default search box: ego speed 1..25 m/s, pedestrian spawning ahead of
/// the car on the near side, heading roughly across the road.
InputSpace default_input_space(const SceneConfig& scene);

}  // namespace crossim
