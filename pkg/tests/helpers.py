"""Small builders shared by several test modules."""
from nilcontact.exterior import Form


def a(dim, *idx, coef=1):
    """The monomial coef * alpha_{i1} ^ ... ^ alpha_{ik}, 1-based indices."""
    return Form.monomial(dim, [i - 1 for i in idx], coef)


def e(dim, i):
    """Basis vector X_i (1-based)."""
    return tuple(1 if k == i - 1 else 0 for k in range(dim))
