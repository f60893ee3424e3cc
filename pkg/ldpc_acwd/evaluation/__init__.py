from .evaluator import EnsembleEvaluator, acwd_table
