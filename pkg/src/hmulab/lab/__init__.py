"""Experiment harness and command line interface."""

from .experiments import EXPERIMENTS, run_experiment
from .report import ExperimentReport

__all__ = ["EXPERIMENTS", "ExperimentReport", "run_experiment"]
