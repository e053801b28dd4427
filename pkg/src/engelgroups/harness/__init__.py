"""Group corpus, check suite, reports and the command line."""

from .checks import CheckReport, find_regular_vector
from .recipes import GroupRecipe, load_corpus, load_default_corpus, named_group
from .suite import SuiteOptions, read_report, replay_record, replay_records, run_suite, write_report

__all__ = ["CheckReport", "find_regular_vector", "GroupRecipe", "load_corpus", "load_default_corpus",
           "named_group", "SuiteOptions", "read_report", "replay_record", "replay_records", "run_suite", "write_report"]
