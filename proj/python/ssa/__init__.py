"""Python interface to the social spider optimizer core."""

from ._core import (
    ConfigError,
    BaselineError,
    Engine,
    Objective,
    Params,
    RankSumResult,
    RunRecord,
    SearchSpace,
    Summary,
    TraceSample,
    benchmark,
    benchmark_from_file,
    benchmark_plain,
    custom,
    derive_seed,
    gen_data,
    lower_median,
    parse_function_id,
    quadratic_fit,
    run,
    success_ecdf,
    summarize,
    wilcoxon_rank_sum,
)

__all__ = [
    "ConfigError",
    "BaselineError",
    "Engine",
    "Objective",
    "Params",
    "RankSumResult",
    "RunRecord",
    "SearchSpace",
    "Summary",
    "TraceSample",
    "benchmark",
    "benchmark_from_file",
    "benchmark_plain",
    "custom",
    "derive_seed",
    "gen_data",
    "lower_median",
    "parse_function_id",
    "quadratic_fit",
    "run",
    "success_ecdf",
    "summarize",
    "wilcoxon_rank_sum",
]
