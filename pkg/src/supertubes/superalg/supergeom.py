"""Super metric geometry: the standard metric on R^(n+1|2m), first
fundamental forms of super embeddings, and volume densities.

Coordinate convention: the first n+1 coordinates are even, followed by
2m odd ones paired as (theta^1, theta^2), (theta^3, theta^4), ...  The
quadratic form of the standard metric is x.x + 2 theta^1 theta^2 + ...
"""

from __future__ import annotations

from typing import Sequence

from supertubes.superalg.grassmann import GrassmannElement, grassmann_sqrt
from supertubes.superalg.supermatrix import SuperDim, SuperMatrix, berezinian


def _standard_blocks(n: int, m: int, ngen: int, invert_odd: bool):
    dim = SuperDim(n + 1, 2 * m)
    z = GrassmannElement(ngen)
    one = GrassmannElement.scalar(ngen, 1)
    t = dim.total
    rows = [[z for _ in range(t)] for _ in range(t)]
    for i in range(n + 1):
        rows[i][i] = one
    for blockpos in range(m):
        i = n + 1 + 2 * blockpos
        sign = -1 if invert_odd else 1
        rows[i][i + 1] = GrassmannElement.scalar(ngen, sign)
        rows[i + 1][i] = GrassmannElement.scalar(ngen, -sign)
    return SuperMatrix(dim, rows)


def super_metric(n: int, m: int, ngen: int = 0) -> SuperMatrix:
    """Standard metric on R^(n+1|2m): identity even block, odd block the
    antisymmetric pairing with G[2i-1][2i] = 1 = -G[2i][2i-1]."""
    if n < 0 or m < 0:
        raise ValueError("dimensions must be nonnegative")
    return _standard_blocks(n, m, ngen, invert_odd=False)


def super_metric_inverse(n: int, m: int, ngen: int = 0) -> SuperMatrix:
    """Inverse of super_metric: the odd pairing block J satisfies
    J^2 = -1, so its inverse is -J."""
    if n < 0 or m < 0:
        raise ValueError("dimensions must be nonnegative")
    return _standard_blocks(n, m, ngen, invert_odd=True)


def super_first_fundamental_form(
    jac: Sequence[Sequence[GrassmannElement]],
    metric: SuperMatrix,
    param_dim: SuperDim,
) -> SuperMatrix:
    """Pull the ambient metric back through a Jacobian.

    jac[A][I] is the derivative of ambient coordinate z^A along
    parameter w^I.  Entry (I,J) of the result is

        sum_{A,B} jac[A][I] * G_AB * jac[B][J] * (-1)^(p(B)(p(J)+1))

    with products taken in that order.  The sign factor makes the
    result an even supermatrix, which the constructor verifies.
    """
    amb = metric.dim
    t_amb, t_par = amb.total, param_dim.total
    if len(jac) != t_amb or any(len(r) != t_par for r in jac):
        raise ValueError(f"Jacobian must be {t_amb}x{t_par}")
    ngen = metric.ngen
    for row in jac:
        for e in row:
            ngen = max(ngen, e.n)
    for a in range(t_amb):
        for i in range(t_par):
            e = jac[a][i]
            want = (amb.parity_of(a) + param_dim.parity_of(i)) % 2
            ok = e.is_even() if want == 0 else e.is_odd()
            if not ok:
                raise ValueError(f"Jacobian entry ({a},{i}) has inconsistent parity")
    g = [[GrassmannElement(ngen) for _ in range(t_par)] for _ in range(t_par)]
    for i in range(t_par):
        for j in range(t_par):
            acc = GrassmannElement(ngen)
            for a in range(t_amb):
                if jac[a][i].is_zero():
                    continue
                for b in range(t_amb):
                    gab = metric.entries[a][b]
                    if gab.is_zero() or jac[b][j].is_zero():
                        continue
                    term = jac[a][i] * gab * jac[b][j]
                    if amb.parity_of(b) * (param_dim.parity_of(j) + 1) % 2:
                        term = -term
                    acc = acc + term
            g[i][j] = acc
    return SuperMatrix(param_dim, g)


def super_volume_density(g: SuperMatrix) -> GrassmannElement:
    """Square root of the Berezinian of the first fundamental form."""
    return grassmann_sqrt(berezinian(g))


def dual_super_volume_density(
    grad_phi: Sequence[GrassmannElement],
    metric_inverse: SuperMatrix,
) -> GrassmannElement:
    """Density sqrt(dPhi . G^{-1} . dPhi) for a level-set hypersurface.

    grad_phi[A] is the derivative of the (even) defining function along
    z^A, so it carries the parity of z^A.  The scalar under the root is

        sum_{A,B} grad_phi[A] * Ginv^{AB} * grad_phi[B] * (-1)^p(B).
    """
    amb = metric_inverse.dim
    t = amb.total
    if len(grad_phi) != t:
        raise ValueError("gradient length does not match the metric")
    ngen = metric_inverse.ngen
    for e in grad_phi:
        ngen = max(ngen, e.n)
    for a in range(t):
        e = grad_phi[a]
        ok = e.is_even() if amb.parity_of(a) == 0 else e.is_odd()
        if not ok:
            raise ValueError(f"gradient component {a} has inconsistent parity")
    acc = GrassmannElement(ngen)
    for a in range(t):
        if grad_phi[a].is_zero():
            continue
        for b in range(t):
            gab = metric_inverse.entries[a][b]
            if gab.is_zero() or grad_phi[b].is_zero():
                continue
            term = grad_phi[a] * gab * grad_phi[b]
            if amb.parity_of(b) == 1:
                term = -term
            acc = acc + term
    return grassmann_sqrt(acc)
