"""Exact and numerical verification toolkit in three strands.

``exact``     -- rational numbers, polynomials, power series, rational
                 function reconstruction.  Everything over Q, no floats.
``superalg``  -- Grassmann algebras, supermatrices, Berezinians and the
                 characteristic functions built from them.
``tubegeom``  -- hypersurfaces given parametrically or as level sets,
                 their shape operators, and tube volume polynomials.
``zeta``      -- point counting over finite fields and rational zeta
                 functions, bridged back to ``superalg`` by realizing a
                 rational function as the characteristic function of an
                 operator on a superspace.

The command line entry point lives in ``supertubes.cli``.
"""

__version__ = "0.1.0"
