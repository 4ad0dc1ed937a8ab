"""Limit order book market lab: ZIP traders, quote-tape recording, an MLP
imitator, and live profit comparisons."""

from ._core import (
    Book,
    ConfigError,
    DatasetError,
    DependencyError,
    Error,
    FormatError,
    LobSnapshot,
    MannWhitneyResult,
    Model,
    ProcessResult,
    RunConfig,
    Side,
    SummaryStats,
    Trade,
    compare,
    evaluate,
    load_config,
    load_model,
    mann_whitney,
    parse_config,
    pearson,
    read_profits,
    read_tape,
    simulate,
    smiths_alpha,
    summary_stats,
    train,
)

__all__ = [name for name in dir() if not name.startswith("_")]
