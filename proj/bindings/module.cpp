#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "swarmx/campaign.hpp"
#include "swarmx/csv.hpp"
#include "swarmx/metrics.hpp"
#include "swarmx/svg_plot.hpp"
#include "swarmx/xplain.hpp"

namespace py = pybind11;
using namespace swarmx;

PYBIND11_MODULE(_core, m) {
    m.doc() = "PSO topology campaigns, AOCC scoring and Shapley attribution";

    py::enum_<Topology>(m, "Topology")
        .value("Star", Topology::Star)
        .value("Ring", Topology::Ring)
        .value("VonNeumann", Topology::VonNeumann);

    py::enum_<ModalClass>(m, "ModalClass")
        .value("Unimodal", ModalClass::Unimodal)
        .value("Multimodal", ModalClass::Multimodal)
        .value("HighlyMultimodal", ModalClass::HighlyMultimodal);

    py::class_<ProblemInstance>(m, "ProblemInstance")
        .def(py::init([](int fid, int dim, int iid, std::vector<double> shift,
                         double f_opt) {
                 return ProblemInstance(ProblemId{fid}, dim, iid, std::move(shift), f_opt);
             }),
             py::arg("fid"), py::arg("dim"), py::arg("iid"), py::arg("shift"),
             py::arg("f_opt") = 0.0)
        .def_property_readonly("fid", &ProblemInstance::fid)
        .def_property_readonly("dim", &ProblemInstance::dim)
        .def_property_readonly("iid", &ProblemInstance::iid)
        .def_property_readonly("shift", &ProblemInstance::shift)
        .def_property_readonly("f_opt", &ProblemInstance::f_opt)
        .def("evaluate", [](const ProblemInstance& inst, const std::vector<double>& x) {
            return inst.evaluate(x);
        });

    m.def("supported_fids", [] {
        const auto fids = ProblemId::supported();
        return std::vector<int>(fids.begin(), fids.end());
    });
    m.def(
        "make_instance",
        [](int fid, int iid, int dim) { return make_instance(ProblemId{fid}, iid, dim); },
        py::arg("fid"), py::arg("iid"), py::arg("dim") = 2);
    m.def(
        "modal_class", [](int fid) { return modal_class(ProblemId{fid}); }, py::arg("fid"));
    m.def(
        "evaluate",
        [](const ProblemInstance& inst, const std::vector<double>& x) {
            return evaluate(inst, x);
        },
        py::arg("instance"), py::arg("x"));

    py::class_<Hyperparameters>(m, "Hyperparameters")
        .def(py::init([](Topology topology, double c1, double c2, double w, int n, int k,
                         int p, int r) {
                 Hyperparameters hp{topology, c1, c2, w, n, k, p, r};
                 validate(hp);
                 return hp;
             }),
             py::arg("topology") = Topology::Star, py::arg("c1") = 0.5,
             py::arg("c2") = 0.5, py::arg("w") = 0.5, py::arg("n") = 50, py::arg("k") = 1,
             py::arg("p") = 2, py::arg("r") = 1)
        .def_readonly("topology", &Hyperparameters::topology)
        .def_readonly("c1", &Hyperparameters::c1)
        .def_readonly("c2", &Hyperparameters::c2)
        .def_readonly("w", &Hyperparameters::w)
        .def_readonly("n", &Hyperparameters::n)
        .def_readonly("k", &Hyperparameters::k)
        .def_readonly("p", &Hyperparameters::p)
        .def_readonly("r", &Hyperparameters::r);

    m.def(
        "run",
        [](const Hyperparameters& hp, const ProblemInstance& inst, int budget,
           std::uint64_t seed) { return run(hp, inst, budget, seed).best_so_far; },
        py::arg("hp"), py::arg("instance"), py::arg("budget") = 100, py::arg("seed") = 1,
        "Best-so-far objective value per iteration.");

    m.def("neighbors_star", [](int n) { return neighbors_star(n).neighbors; });
    m.def(
        "neighbors_ring",
        [](const std::vector<std::vector<double>>& positions, int k, int p) {
            return neighbors_ring(positions, k, p).neighbors;
        },
        py::arg("positions"), py::arg("k"), py::arg("p") = 2);
    m.def(
        "neighbors_von_neumann",
        [](const std::vector<std::vector<double>>& positions, int r, int p, int dim) {
            return neighbors_von_neumann(positions, r, p, dim).neighbors;
        },
        py::arg("positions"), py::arg("r"), py::arg("p") = 2, py::arg("dim") = 2);
    m.def("delannoy", &delannoy, py::arg("m"), py::arg("q"));

    m.def(
        "log_scale_trace",
        [](const std::vector<double>& best_so_far, double f_opt) {
            return log_scale_trace(ConvergenceTrace{best_so_far}, f_opt);
        },
        py::arg("best_so_far"), py::arg("f_opt") = 0.0);
    m.def(
        "aocc",
        [](const std::vector<double>& y, double lb, double ub) {
            return aocc(y, AoccBounds{lb, ub});
        },
        py::arg("y"), py::arg("lb") = -5.0, py::arg("ub") = 5.0);

    py::class_<ConfigTuple>(m, "ConfigTuple")
        .def_readonly("c1", &ConfigTuple::c1)
        .def_readonly("c2", &ConfigTuple::c2)
        .def_readonly("w", &ConfigTuple::w)
        .def_readonly("n", &ConfigTuple::n)
        .def_readonly("k", &ConfigTuple::k)
        .def_readonly("p", &ConfigTuple::p)
        .def_readonly("r", &ConfigTuple::r)
        .def("__repr__", [](const ConfigTuple& c) {
            return "ConfigTuple(c1=" + format_double(c.c1) + ", c2=" + format_double(c.c2) +
                   ", w=" + format_double(c.w) + ", n=" + std::to_string(c.n) +
                   ", k=" + std::to_string(c.k) + ", p=" + std::to_string(c.p) +
                   ", r=" + std::to_string(c.r) + ")";
        });

    m.def(
        "enumerate_grid",
        [](bool reduced) {
            return enumerate_grid(reduced ? ConfigGrid::reduced() : ConfigGrid::full());
        },
        py::arg("reduced") = false);
    m.def("derive_seed", &derive_seed, py::arg("topology"), py::arg("config_index"),
          py::arg("fid"), py::arg("iid"), py::arg("run_index"));

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("topology", &RunRecord::topology)
        .def_readonly("config_index", &RunRecord::config_index)
        .def_readonly("config", &RunRecord::config)
        .def_readonly("fid", &RunRecord::fid)
        .def_readonly("iid", &RunRecord::iid)
        .def_readonly("run_index", &RunRecord::run_index)
        .def_readonly("seed", &RunRecord::seed)
        .def_readonly("aocc", &RunRecord::aocc)
        .def_readonly("final_best", &RunRecord::final_best);

    m.def(
        "execute_campaign",
        [](Topology topology, const std::vector<ConfigTuple>& grid,
           const std::vector<int>& fids, int dim, int budget, int instances, int runs,
           int workers) {
            CampaignSettings settings{fids, dim, budget, instances, runs, workers};
            return execute_campaign(topology, grid, settings);
        },
        py::arg("topology"), py::arg("grid"), py::arg("fids"), py::arg("dim") = 2,
        py::arg("budget") = 100, py::arg("instances") = 5, py::arg("runs") = 5,
        py::arg("workers") = 0, py::call_guard<py::gil_scoped_release>());

    py::class_<AggregateRow>(m, "AggregateRow")
        .def_readonly("fid", &AggregateRow::fid)
        .def_readonly("topology", &AggregateRow::topology)
        .def_readonly("single_best_mean", &AggregateRow::single_best_mean)
        .def_readonly("single_best_std", &AggregateRow::single_best_std)
        .def_readonly("avg_best_mean", &AggregateRow::avg_best_mean)
        .def_readonly("avg_best_std", &AggregateRow::avg_best_std)
        .def_readonly("all_mean", &AggregateRow::all_mean)
        .def_readonly("all_std", &AggregateRow::all_std);

    m.def("aggregate", &aggregate, py::arg("records"), py::arg("grid"));
    m.def("write_runs_csv", &write_runs_csv, py::arg("path"), py::arg("records"));
    m.def("read_runs_csv", &read_runs_csv, py::arg("path"));

    py::class_<FeatureMatrix>(m, "FeatureMatrix")
        .def_property_readonly("rows",
                               [](const FeatureMatrix& fm) {
                                   std::vector<std::vector<double>> out;
                                   out.reserve(fm.rows.size());
                                   for (const auto& r : fm.rows)
                                       out.emplace_back(r.begin(), r.end());
                                   return out;
                               })
        .def_readonly("target", &FeatureMatrix::target)
        .def_readonly("config_index", &FeatureMatrix::config_index)
        .def("__len__", &FeatureMatrix::size);

    m.def("feature_names", [] {
        return std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());
    });
    m.def(
        "build_feature_matrix",
        [](const std::vector<RunRecord>& records, std::optional<int> fid) {
            return build_feature_matrix(records, fid);
        },
        py::arg("records"), py::arg("fid") = std::nullopt);

    py::class_<SurrogateModel>(m, "SurrogateModel")
        .def("predict",
             [](const SurrogateModel& model, const std::vector<double>& x) {
                 return model.predict(x);
             })
        .def_property_readonly("r2_train", &SurrogateModel::r2_train)
        .def_property_readonly("trees", &SurrogateModel::trees)
        .def_property_readonly("max_depth", &SurrogateModel::max_depth)
        .def_property_readonly("seed", &SurrogateModel::seed);

    m.def("fit_surrogate", &fit_surrogate, py::arg("fm"), py::arg("trees") = 100,
          py::arg("max_depth") = 8, py::arg("seed") = kDefaultSurrogateSeed,
          py::call_guard<py::gil_scoped_release>());

    py::class_<Attribution>(m, "Attribution")
        .def_readonly("sample_index", &Attribution::sample_index)
        .def_readonly("feature", &Attribution::feature)
        .def_readonly("feature_value", &Attribution::feature_value)
        .def_readonly("shap_value", &Attribution::shap_value);

    m.def("is_complete_factorial", &is_complete_factorial, py::arg("fm"));
    m.def("shapley_exact_grid", &shapley_exact_grid, py::arg("fm"),
          py::arg("sample_index"));
    m.def("shapley_exact_all", &shapley_exact_all, py::arg("fm"),
          py::call_guard<py::gil_scoped_release>());
    m.def("shapley_surrogate", &shapley_surrogate, py::arg("model"), py::arg("fm"),
          py::arg("sample_index"), py::arg("permutations") = 256,
          py::arg("seed") = kDefaultSurrogateSeed);

    py::class_<SwarmPlotRow>(m, "SwarmPlotRow")
        .def_readonly("feature", &SwarmPlotRow::feature)
        .def_readonly("shap_value", &SwarmPlotRow::shap_value)
        .def_readonly("normalized_feature_value", &SwarmPlotRow::normalized_feature_value);

    m.def("swarm_plot_data",
          py::overload_cast<const std::vector<Attribution>&, const FeatureMatrix&>(
              &swarm_plot_data),
          py::arg("attributions"), py::arg("fm"));
    m.def("render_swarm_svg", &render_swarm_svg, py::arg("rows"));
}
