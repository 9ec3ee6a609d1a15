// Python bindings for the simulator core.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "cogatr/classifier.hpp"
#include "cogatr/cognition.hpp"
#include "cogatr/config.hpp"
#include "cogatr/dsp.hpp"
#include "cogatr/errors.hpp"
#include "cogatr/harness.hpp"
#include "cogatr/scene.hpp"

namespace py = pybind11;
using namespace cogatr;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

std::vector<Complex> to_vector(const ComplexArray& a) {
    if (a.ndim() != 1) throw py::value_error("expected a 1-D complex array");
    return {a.data(), a.data() + a.size()};
}

ComplexArray to_array(const std::vector<Complex>& v) {
    ComplexArray out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

py::dict row_dict(const SweepRow& r) {
    py::dict d;
    d["variant"] = std::string(to_string(r.variant));
    d["delta_theta_deg"] = r.delta_theta_deg;
    d["snr_db"] = r.snr_db;
    d["pcc_percent"] = r.pcc_percent;
    d["unclassified_percent"] = r.unclassified_percent;
    d["misclassified_percent"] = r.misclassified_percent;
    d["median_perspectives"] = r.median_perspectives;
    d["trials"] = r.trials;
    return d;
}

py::list rows_list(const std::vector<SweepRow>& rows) {
    py::list out;
    for (const auto& r : rows) out.append(row_dict(r));
    return out;
}

ExperimentConfig config_from(const std::string& path, const py::dict& overrides) {
    ExperimentConfig cfg = path.empty() ? ExperimentConfig{} : load_config_file(path);
    for (const auto& [k, v] : overrides) {
        apply_config_value(cfg, py::str(k).cast<std::string>(), py::str(v).cast<std::string>());
    }
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Cognitive angular-diversity ATR simulator";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<GeometryError>(m, "GeometryError", error.ptr());
    py::register_exception<DegenerateSignal>(m, "DegenerateSignal", error.ptr());
    py::register_exception<EmptyCell>(m, "EmptyCell", error.ptr());
    py::register_exception<MissingBank>(m, "MissingBank", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    py::enum_<TargetClass>(m, "TargetClass")
        .value("APC", TargetClass::APC)
        .value("MBT", TargetClass::MBT)
        .value("MSL", TargetClass::MSL)
        .value("STR", TargetClass::STR);
    py::enum_<Domain>(m, "Domain").value("RANGE", Domain::RANGE).value("FREQUENCY", Domain::FREQUENCY);
    py::enum_<ProcessingVariant>(m, "ProcessingVariant")
        .value("TIME_ONLY", ProcessingVariant::TIME_ONLY)
        .value("TIME_FREQ_SIMULTANEOUS", ProcessingVariant::TIME_FREQ_SIMULTANEOUS)
        .value("TIME_THEN_FREQ", ProcessingVariant::TIME_THEN_FREQ);

    py::class_<RadarBand>(m, "RadarBand")
        .def(py::init<>())
        .def_readwrite("center_frequency_hz", &RadarBand::center_frequency_hz)
        .def_readwrite("bandwidth_hz", &RadarBand::bandwidth_hz)
        .def_readwrite("num_frequency_samples", &RadarBand::num_frequency_samples)
        .def_property_readonly("range_bin_m", &RadarBand::range_bin_m)
        .def("frequency_hz", &RadarBand::frequency_hz);

    py::class_<Geometry>(m, "Geometry")
        .def(py::init<double, double, double>(), py::arg("tx_azimuth_deg"), py::arg("bistatic_angle_deg"),
             py::arg("elevation_deg"))
        .def_property_readonly("tx_azimuth_deg", &Geometry::tx_azimuth_deg)
        .def_property_readonly("rx_azimuth_deg", &Geometry::rx_azimuth_deg)
        .def_property_readonly("bistatic_angle_deg", &Geometry::bistatic_angle_deg)
        .def_property_readonly("elevation_deg", &Geometry::elevation_deg)
        .def("rotated", &Geometry::rotated);

    py::class_<Scatterer>(m, "Scatterer")
        .def(py::init<>())
        .def_readwrite("position", &Scatterer::position)
        .def_readwrite("base_amplitude", &Scatterer::base_amplitude)
        .def_readwrite("directivity_center_deg", &Scatterer::directivity_center_deg)
        .def_readwrite("directivity_width_deg", &Scatterer::directivity_width_deg)
        .def_readwrite("frequency_exponent", &Scatterer::frequency_exponent);

    py::class_<TargetModel>(m, "TargetModel")
        .def(py::init<>())
        .def_readwrite("class_label", &TargetModel::class_label)
        .def_readwrite("seed", &TargetModel::seed)
        .def_readwrite("scatterers", &TargetModel::scatterers);

    m.def("make_target", &make_target, py::arg("class_label"), py::arg("seed"));
    m.def(
        "synthesize_kspace",
        [](const TargetModel& t, const Geometry& g, const RadarBand& b) { return to_array(synthesize_kspace(t, g, b)); },
        py::arg("target"), py::arg("geometry"), py::arg("band") = RadarBand{});
    m.def(
        "add_noise",
        [](const ComplexArray& k, double snr_db, std::uint64_t seed) {
            return to_array(add_noise(to_vector(k), snr_db, seed));
        },
        py::arg("kspace"), py::arg("snr_db"), py::arg("noise_seed"));
    m.def(
        "unitary_dft", [](const ComplexArray& x) { return to_array(unitary_dft(to_vector(x))); }, py::arg("x"));
    m.def(
        "extract_features",
        [](const ComplexArray& k, Domain d) { return extract_features(to_vector(k), d).values; },
        py::arg("kspace"), py::arg("domain"));
    m.def(
        "sector_of", [](double az) { return sector_of(az).value(); }, py::arg("azimuth_deg"));

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init(&config_from), py::arg("path") = "", py::arg("overrides") = py::dict())
        .def("set", [](ExperimentConfig& c, const std::string& key, const std::string& value) {
            apply_config_value(c, key, value);
            c.validate();
        })
        .def("to_text", &format_config)
        .def_readonly("master_seed", &ExperimentConfig::master_seed)
        .def_readonly("test_trials_per_class", &ExperimentConfig::test_trials_per_class)
        .def_readonly("elevations_deg", &ExperimentConfig::elevations_deg);

    m.def(
        "write_dataset",
        [](const ExperimentConfig& cfg, const std::string& path) {
            std::ostringstream text;
            const Dataset ds = generate_dataset(cfg);
            write_dataset(ds, text);
            write_file_atomically(path, text.str());
            return ds.records.size();
        },
        py::arg("config"), py::arg("path"), "Generate the noiseless training set and write it as NDJSON.");

    py::class_<Experiment>(m, "Experiment")
        .def(py::init<ExperimentConfig>(), py::arg("config"))
        .def(
            "run_point",
            [](const Experiment& e, ProcessingVariant v, double dtheta, double snr_db) {
                SweepRow row;
                {
                    py::gil_scoped_release release;
                    row = e.run_point(e.config().policy.policy_for(v, dtheta), snr_db);
                }
                return row_dict(row);
            },
            py::arg("variant"), py::arg("delta_theta_deg"), py::arg("snr_db"))
        .def("sweep_dtheta", [](const Experiment& e) { return rows_list(run_sweep_dtheta(e)); })
        .def("sweep_snr", [](const Experiment& e) { return rows_list(run_sweep_snr(e)); })
        .def("single_perspective_baseline", [](const Experiment& e) { return rows_list(single_perspective_baseline(e)); })
        .def(
            "fixed_two_perspective_baseline",
            [](const Experiment& e, double dtheta, ProcessingVariant v) {
                return row_dict(fixed_two_perspective_baseline(e, dtheta, v));
            },
            py::arg("delta_theta_deg"), py::arg("variant") = ProcessingVariant::TIME_FREQ_SIMULTANEOUS)
        .def(
            "run_trial",
            [](const Experiment& e, TargetClass c, int trial, ProcessingVariant v, double dtheta, double snr_db) {
                const auto& cfg = e.config();
                const std::size_t el = static_cast<std::size_t>(trial) % cfg.elevations_deg.size();
                const Geometry start(e.test_start_azimuth(c, trial), cfg.beta_deg, e.test_elevation(trial));
                const TrialOutcome o = run_trial(e.target(c), start, cfg.band, e.banks()[el].banks,
                                                 cfg.policy.policy_for(v, dtheta), snr_db, e.trial_noise_seed(c, trial));
                py::dict d;
                d["declared_class"] = o.declared_class ? py::cast(*o.declared_class) : py::none();
                d["provisional_class"] = o.provisional_class;
                d["correct"] = o.correct;
                d["perspectives_used"] = o.perspectives_used;
                d["votes"] = o.final_state.votes;
                py::list azimuths;
                for (const auto& h : o.history) azimuths.append(h.tx_azimuth_deg);
                d["tx_azimuths_deg"] = azimuths;
                return d;
            },
            py::arg("true_class"), py::arg("trial"), py::arg("variant"), py::arg("delta_theta_deg"),
            py::arg("snr_db"));

    m.def(
        "sweep_csv",
        [](const py::list& rows) {
            std::vector<SweepRow> out;
            for (const auto& item : rows) {
                const auto d = item.cast<py::dict>();
                SweepRow r;
                r.variant = *parse_variant(d["variant"].cast<std::string>());
                r.delta_theta_deg = d["delta_theta_deg"].cast<double>();
                r.snr_db = d["snr_db"].cast<double>();
                r.pcc_percent = d["pcc_percent"].cast<double>();
                r.unclassified_percent = d["unclassified_percent"].cast<double>();
                r.median_perspectives = d["median_perspectives"].cast<double>();
                r.trials = d["trials"].cast<int>();
                out.push_back(r);
            }
            std::ostringstream text;
            write_sweep_csv(out, text);
            return text.str();
        },
        py::arg("rows"), "Render sweep rows in the CLI's CSV format.");
}
