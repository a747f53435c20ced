""" Coefficient language: parsing, canonical printing and batched evaluation of drift and diffusion models. """

from .evaluate import LawMoments, evaluate
from .model import CoeffExpr, CoeffModel, eval_coeff, parse_coeff
from .nodes import BinOp, Func, Lag, MeanLag, MeanSupNorm, Neg, Num, Time, to_source
from .parser import MAX_DEPTH, parse, tokenize

__all__ = ("CoeffExpr",
           "CoeffModel",
           "parse_coeff",
           "eval_coeff",
           "LawMoments",
           "evaluate",
           "parse",
           "tokenize",
           "to_source",
           "MAX_DEPTH",
           "Num",
           "Time",
           "Lag",
           "MeanLag",
           "MeanSupNorm",
           "Neg",
           "BinOp",
           "Func")
