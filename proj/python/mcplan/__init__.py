"""Scan abstraction, transition-system planning and closed-loop simulation."""

from ._mcplan import (  # noqa: F401
    LABEL_HORIZON,
    LABEL_SAFE,
    AgentKind,
    BoxedInEvidence,
    CollisionEvent,
    ConfigError,
    CutoffLine,
    Disturbance,
    DisturbanceKind,
    Dts,
    LatencyStats,
    LateralPartition,
    LongitudinalPartition,
    LongitudinalSign,
    Metrics,
    MotionCommand,
    Nfa,
    NoiseModel,
    Observation,
    PartitionSet,
    Plan,
    PlanEvent,
    PlanRequest,
    PlanResult,
    PointCloud,
    Pose,
    Preference,
    ProductPath,
    RobotState,
    RunConfig,
    RunOptions,
    RunTrace,
    SafetyConfig,
    ScenarioSpec,
    SearchOptions,
    Segment,
    Side,
    SimParams,
    TaskEvent,
    TaskKind,
    Valuation,
    WorldModel,
    apply_config_file,
    boxed_in,
    build_dts,
    check_collision,
    compute_metrics,
    construct_lateral,
    construct_longitudinal,
    dump_product,
    export_run,
    extract_plan,
    load_scenario,
    load_trace,
    make_random_room,
    nearest_front,
    partition_look,
    partition_safe,
    partition_shield,
    plan_generate,
    product_search,
    raycast_scan,
    run_loop,
    run_scenario,
    step_kinematics,
    valuate,
    wrap_angle,
)

__version__ = "0.1.0"
