""" Discrete path space: uniform time grids, path segments and trajectories with their order, meet and norm. """

from .grid import TimeGrid
from .io import (load_segment_csv, load_segment_json, load_trajectory_csv, save_segment_csv, save_segment_json,
                 save_trajectory_csv, segment_from_dict, segment_to_dict)
from .paths import PathSegment, Trajectory, batch_leq, batch_sup_norm, leq, meet, segment_at, sup_norm

__all__ = ("TimeGrid",
           "PathSegment",
           "Trajectory",
           "leq",
           "meet",
           "sup_norm",
           "segment_at",
           "batch_leq",
           "batch_sup_norm",
           "segment_to_dict",
           "segment_from_dict",
           "save_segment_json",
           "load_segment_json",
           "save_segment_csv",
           "load_segment_csv",
           "save_trajectory_csv",
           "load_trajectory_csv")
