#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossim/analysis.hpp"
#include "crossim/campaign.hpp"
#include "crossim/config.hpp"
#include "crossim/errors.hpp"
#include "crossim/fitness.hpp"
#include "crossim/search.hpp"

namespace py = pybind11;
using namespace crossim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Scenario search and cross-backend replication for a pedestrian "
            "collision warning system";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  py::class_<TestInput>(m, "TestInput")
      .def(py::init<>())
      .def(py::init([](double v0c, double x0p, double y0p, double theta_p, double v0p) {
             TestInput in;
             in.car_speed = v0c;
             in.ped_x = x0p;
             in.ped_y = y0p;
             in.ped_heading_deg = theta_p;
             in.ped_speed = v0p;
             return in;
           }),
           py::arg("car_speed"), py::arg("ped_x"), py::arg("ped_y"), py::arg("ped_heading_deg"),
           py::arg("ped_speed"))
      .def_readwrite("car_speed", &TestInput::car_speed)
      .def_readwrite("ped_x", &TestInput::ped_x)
      .def_readwrite("ped_y", &TestInput::ped_y)
      .def_readwrite("ped_heading_deg", &TestInput::ped_heading_deg)
      .def_readwrite("ped_speed", &TestInput::ped_speed)
      .def("__repr__", [](const TestInput& in) {
        return "TestInput(car_speed=" + std::to_string(in.car_speed) +
               ", ped_x=" + std::to_string(in.ped_x) + ", ped_y=" + std::to_string(in.ped_y) +
               ", ped_heading_deg=" + std::to_string(in.ped_heading_deg) +
               ", ped_speed=" + std::to_string(in.ped_speed) + ")";
      });

  py::enum_<SpeedUnit>(m, "SpeedUnit")
      .value("METERS_PER_SECOND", SpeedUnit::MetersPerSecond)
      .value("KILOMETERS_PER_HOUR", SpeedUnit::KilometersPerHour);

  py::class_<FrameSpec>(m, "FrameSpec")
      .def(py::init<>())
      .def_readwrite("origin_x", &FrameSpec::origin_x)
      .def_readwrite("origin_y", &FrameSpec::origin_y)
      .def_readwrite("heading_zero_deg", &FrameSpec::heading_zero_deg)
      .def_readwrite("clockwise", &FrameSpec::clockwise)
      .def_readwrite("speed_unit", &FrameSpec::speed_unit)
      .def_static("canonical", &FrameSpec::canonical);

  m.def("to_canonical", &to_canonical, py::arg("input"), py::arg("frame"));
  m.def("from_canonical", &from_canonical, py::arg("input"), py::arg("frame"));
  m.def("translate_input", &translate_input, py::arg("input"), py::arg("from_frame"),
        py::arg("to_frame"));

  py::class_<SceneConfig>(m, "SceneConfig")
      .def(py::init<>())
      .def_readwrite("car_x", &SceneConfig::car_x)
      .def_readwrite("car_y", &SceneConfig::car_y)
      .def_readwrite("road_length", &SceneConfig::road_length)
      .def_readwrite("lane_width", &SceneConfig::lane_width)
      .def_readwrite("car_length", &SceneConfig::car_length)
      .def_readwrite("car_width", &SceneConfig::car_width)
      .def_readwrite("ped_radius", &SceneConfig::ped_radius)
      .def_readwrite("crossing_offset", &SceneConfig::crossing_offset);

  py::enum_<Integrator>(m, "Integrator")
      .value("FORWARD_EULER", Integrator::ForwardEuler)
      .value("SEMI_IMPLICIT", Integrator::SemiImplicit);

  py::class_<BackendConfig>(m, "BackendConfig")
      .def(py::init<>())
      .def_readwrite("id", &BackendConfig::id)
      .def_readwrite("integrator", &BackendConfig::integrator)
      .def_readwrite("internal_dt", &BackendConfig::internal_dt)
      .def_readwrite("sample_period", &BackendConfig::sample_period)
      .def_readwrite("sensor_range", &BackendConfig::sensor_range)
      .def_readwrite("sensor_fov_deg", &BackendConfig::sensor_fov_deg)
      .def_readwrite("sensor_latency", &BackendConfig::sensor_latency)
      .def_readwrite("position_quantum", &BackendConfig::position_quantum)
      .def_readwrite("gait_amplitude", &BackendConfig::gait_amplitude)
      .def_readwrite("gait_frequency", &BackendConfig::gait_frequency)
      .def_readwrite("frame", &BackendConfig::frame)
      .def_static("alpha", &BackendConfig::alpha)
      .def_static("beta", &BackendConfig::beta);

  m.def("backend_by_id", &backend_by_id, py::arg("id"));

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init<>())
      .def_readwrite("awa_margin", &DetectorConfig::awa_margin)
      .def_readwrite("ttc_threshold", &DetectorConfig::ttc_threshold)
      .def_readwrite("awa_headway", &DetectorConfig::awa_headway)
      .def_readwrite("awa_base_length", &DetectorConfig::awa_base_length)
      .def_readwrite("awa_width", &DetectorConfig::awa_width)
      .def_readwrite("awa_lateral_offset", &DetectorConfig::awa_lateral_offset)
      .def_readwrite("front_anchor", &DetectorConfig::front_anchor)
      .def_readwrite("oracle_ttc", &DetectorConfig::oracle_ttc);

  py::class_<LossyChannelConfig>(m, "LossyChannelConfig")
      .def(py::init<>())
      .def_readwrite("loss_probability", &LossyChannelConfig::loss_probability)
      .def_readwrite("repeats", &LossyChannelConfig::repeats)
      .def_readwrite("precision", &LossyChannelConfig::precision);

  py::enum_<Termination>(m, "Termination")
      .value("ROAD_END", Termination::RoadEnd)
      .value("CROSSED", Termination::Crossed)
      .value("PASSED", Termination::Passed);

  py::class_<ScenarioOutcome>(m, "ScenarioOutcome")
      .def(py::init<>())
      .def_readwrite("ff1", &ScenarioOutcome::ff1)
      .def_readwrite("ff2", &ScenarioOutcome::ff2)
      .def_readwrite("ff3", &ScenarioOutcome::ff3)
      .def_readwrite("collision", &ScenarioOutcome::collision)
      .def_readwrite("detected", &ScenarioOutcome::detected)
      .def_readwrite("detection_time", &ScenarioOutcome::detection_time)
      .def_readwrite("termination", &ScenarioOutcome::termination)
      .def_readwrite("backend", &ScenarioOutcome::backend)
      .def_readwrite("input", &ScenarioOutcome::input)
      .def("objectives", &ScenarioOutcome::objectives)
      .def("__repr__", [](const ScenarioOutcome& o) {
        return "ScenarioOutcome(ff1=" + std::to_string(o.ff1) + ", ff2=" + std::to_string(o.ff2) +
               ", ff3=" + std::to_string(o.ff3) + ", collision=" + (o.collision ? "True" : "False") +
               ", detected=" + (o.detected ? "True" : "False") + ")";
      });

  py::class_<Classification>(m, "Classification")
      .def_readonly("critical", &Classification::critical)
      .def_readonly("violation", &Classification::violation);
  m.def("classify", &classify, py::arg("outcome"));

  m.def("time_to_collision", &time_to_collision, py::arg("rel_pos"), py::arg("rel_vel"),
        py::arg("radius"), py::arg("cap") = kTtcCap);
  m.def(
      "time_to_collision",
      [](double dx, double dy, double vx, double vy, double radius, double cap) {
        return time_to_collision(Vec2{dx, dy}, Vec2{vx, vy}, radius, cap);
      },
      py::arg("dx"), py::arg("dy"), py::arg("vx"), py::arg("vy"), py::arg("radius"),
      py::arg("cap") = kTtcCap);

  py::class_<Vec2>(m, "Vec2")
      .def(py::init<>())
      .def(py::init([](double x, double y) { return Vec2{x, y}; }), py::arg("x"), py::arg("y"))
      .def_readwrite("x", &Vec2::x)
      .def_readwrite("y", &Vec2::y);

  m.def(
      "evaluate",
      [](const TestInput& input, const SceneConfig& scene, const BackendConfig& backend,
         const DetectorConfig& detector, const std::optional<LossyChannelConfig>& channel,
         std::uint64_t seed) { return evaluate(input, scene, backend, detector, channel, seed); },
      py::arg("input"), py::arg("scene") = SceneConfig{}, py::arg("backend") = BackendConfig::alpha(),
      py::arg("detector") = DetectorConfig{}, py::arg("channel") = std::nullopt,
      py::arg("seed") = 0);

  py::class_<GeneRange>(m, "GeneRange")
      .def(py::init<>())
      .def_readwrite("lo", &GeneRange::lo)
      .def_readwrite("hi", &GeneRange::hi);

  py::class_<InputSpace>(m, "InputSpace")
      .def(py::init<>())
      .def_readwrite("range", &InputSpace::range)
      .def("contains", &InputSpace::contains)
      .def("clamp", &InputSpace::clamp);
  m.def("default_input_space", &default_input_space, py::arg("scene") = SceneConfig{});

  py::class_<SearchConfig>(m, "SearchConfig")
      .def(py::init<>())
      .def_readwrite("population", &SearchConfig::population)
      .def_readwrite("crossover_rate", &SearchConfig::crossover_rate)
      .def_readwrite("mutation_rate", &SearchConfig::mutation_rate)
      .def_readwrite("sbx_eta", &SearchConfig::sbx_eta)
      .def_readwrite("sigma_fraction", &SearchConfig::sigma_fraction)
      .def_readwrite("budget", &SearchConfig::budget);

  py::class_<Individual>(m, "Individual")
      .def_readonly("input", &Individual::input)
      .def_readonly("outcome", &Individual::outcome)
      .def_readonly("rank", &Individual::rank)
      .def_readonly("crowding", &Individual::crowding);

  py::class_<FrontSnapshot>(m, "FrontSnapshot")
      .def_readonly("generation", &FrontSnapshot::generation)
      .def_readonly("evaluations", &FrontSnapshot::evaluations)
      .def_readonly("objectives", &FrontSnapshot::objectives);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("front", &RunResult::front)
      .def_readonly("evaluated", &RunResult::evaluated)
      .def_readonly("history", &RunResult::history)
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("algorithm", &RunResult::algorithm);

  py::class_<CampaignConfig>(m, "CampaignConfig")
      .def(py::init<>())
      .def_readwrite("backend_id", &CampaignConfig::backend_id)
      .def_readwrite("algorithm", &CampaignConfig::algorithm)
      .def_readwrite("runs", &CampaignConfig::runs)
      .def_readwrite("master_seed", &CampaignConfig::master_seed)
      .def_readwrite("scene", &CampaignConfig::scene)
      .def_readwrite("detector", &CampaignConfig::detector)
      .def_readwrite("search", &CampaignConfig::search)
      .def_readwrite("channel", &CampaignConfig::channel)
      .def_readwrite("space", &CampaignConfig::space);

  m.def("run_single", &run_single, py::arg("config"), py::arg("run_index"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_campaign", &run_campaign, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());

  m.def("hypervolume", &hypervolume, py::arg("front"), py::arg("ref"));
  m.def("normalize_objectives", [](const std::vector<std::array<double, 3>>& pts) {
    ObjectiveBounds b = objective_bounds(pts);
    return normalize_points(pts, b);
  });

  py::enum_<MwMethod>(m, "MwMethod")
      .value("AUTO", MwMethod::Auto)
      .value("EXACT", MwMethod::Exact)
      .value("NORMAL", MwMethod::Normal);

  py::class_<MannWhitneyResult>(m, "MannWhitneyResult")
      .def_readonly("u", &MannWhitneyResult::u)
      .def_readonly("p", &MannWhitneyResult::p);
  m.def("mann_whitney_u", &mann_whitney_u, py::arg("a"), py::arg("b"),
        py::arg("method") = MwMethod::Auto);

  py::enum_<XsimCategory>(m, "XsimCategory")
      .value("UNSAFE_CONFIRMED", XsimCategory::UnsafeConfirmed)
      .value("UNSAFE_MITIGATED", XsimCategory::UnsafeMitigated)
      .value("UNSAFE_VANISHED", XsimCategory::UnsafeVanished)
      .value("SAFE_DEGRADED", XsimCategory::SafeDegraded)
      .value("SAFE_CONFIRMED", XsimCategory::SafeConfirmed)
      .value("SAFE_VANISHED", XsimCategory::SafeVanished);
  m.def("xsim_categorize", &xsim_categorize, py::arg("source"), py::arg("replayed"));
  m.def("xsim_category_code", &xsim_category_code, py::arg("category"));
}
