"""PSO topology campaigns with AOCC scoring and Shapley attribution."""

from swarmx._core import (  # noqa: F401
    AggregateRow,
    Attribution,
    ConfigTuple,
    FeatureMatrix,
    Hyperparameters,
    ModalClass,
    ProblemInstance,
    RunRecord,
    SurrogateModel,
    SwarmPlotRow,
    Topology,
    aggregate,
    aocc,
    build_feature_matrix,
    delannoy,
    derive_seed,
    enumerate_grid,
    evaluate,
    execute_campaign,
    feature_names,
    fit_surrogate,
    is_complete_factorial,
    log_scale_trace,
    make_instance,
    modal_class,
    neighbors_ring,
    neighbors_star,
    neighbors_von_neumann,
    read_runs_csv,
    render_swarm_svg,
    run,
    shapley_exact_all,
    shapley_exact_grid,
    shapley_surrogate,
    supported_fids,
    swarm_plot_data,
    write_runs_csv,
)

__version__ = "0.1.0"
