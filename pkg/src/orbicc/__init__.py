"""Exact computations for cluster structures of a polygon with one order-3 orbifold point.

The package computes, for any triangulation of a disk with n+1 marked
boundary points and one interior orbifold point of order three:

* the gentle algebra of the triangulation and of its degree-3 covering
  polygon, with exact rational linear algebra on their modules;
* cluster characters (Laurent polynomials with integer coefficients) of all
  arc modules and strings, via torus-fixed-point counts on quiver
  Grassmannians;
* generalized cluster mutation with non-binomial exchange polynomials and
  exact Laurent division;
* mechanical verification that mutation from the fan triangulation's seed
  produces exactly the arc characters, that flips match exchange relations,
  that rigidity singles out the arc modules, and that everything folds
  correctly through the covering.

See the ``orbicc`` command line tool for one-shot verification runs.
"""

from .laurent import LaurentPoly, lp_add, lp_exact_div, lp_monomial, lp_mul, lp_project
from .surface import (
    Arc,
    Triangulation,
    all_arcs,
    compatible,
    crossing,
    enumerate_triangulations,
    flip,
    lift,
    rotate,
    special_triangulation,
    triangles,
)
from .algebra import (
    DecRep,
    GentleAlgebra,
    Rep,
    algebra_of_triangulation,
    b_matrix,
    c_matrix,
    covering_algebra,
    e_invariant,
    g_vector,
    g_vector_inj,
    hom_dim,
    radical,
    socle_vector,
)
from .strings import (
    StringWord,
    all_strings,
    arc_rep,
    arc_string,
    ar_translate_arc,
    grassmannian_euler,
    string_module,
    substrings,
)
from .ccfun import cc_function, cc_table, classify_e_rigid, verify_generation
from .covering import euler_sum_check, orbit_map, push_down, verify_morphip
from .gca import (
    LaurentPhenomenonViolation,
    Seed,
    all_cluster_variables,
    initial_seed,
    mutate,
    mutate_matrix,
    mutation_closure,
    theta,
)

__version__ = "0.1.0"
