"""Faces of braid-type hyperplane arrangements via marked trees."""

from .arrangement import (
    Arrangement,
    ArrangementError,
    Ideal,
    braid,
    catalan,
    from_set,
    ideal_arrangement,
    ideal_chain,
    is_strongly_transitive,
    is_transitive,
    linial,
    multi_catalan,
    semiorder,
    set_condition,
    shi,
)
from .face_map import SignVector, face_sign_vector, feasible_witness, region_sign_vector
from .marked_trees import MTree, enumerate_admissible, is_admissible
from .oracle import enumerate_faces_grid, face_counts
from .trees import Tree, count_trees, enumerate_trees

__version__ = "0.1.0"
