"""Shared group documents and builders for the test suite."""

from orbifill import enumerate_group, parse_group


def scalar_cyclic(k, n=2):
    """mu_k acting by the scalar zeta_k on C^n; isolated for every k."""
    gen = [[("z" if i == j else "0") for j in range(n)] for i in range(n)]
    return {"name": f"mu{k}", "dimension": n, "conductor": k, "generators": [gen]}


def a_type(k):
    """The A_(k-1) surface singularity group diag(zeta_k, zeta_k^(k-1))."""
    second = f"1*z^{k - 1}" if k > 1 else "1"
    return {
        "name": f"A{k - 1}",
        "dimension": 2,
        "conductor": k,
        "generators": [[["z", "0"], ["0", second]]],
    }


def antipodal(n):
    gen = [[("-1" if i == j else "0") for j in range(n)] for i in range(n)]
    return {"name": f"antipodal{n}", "dimension": n, "conductor": 2, "generators": [gen]}


def quaternion():
    return {
        "name": "Q8",
        "dimension": 2,
        "conductor": 4,
        "generators": [[["z", "0"], ["0", "-1*z^1"]], [["0", "1"], ["-1", "0"]]],
    }


def binary_dihedral(m):
    """Order 4m subgroup of SU(2) generated by diag(z, z^-1) and the j-twist."""
    return {
        "name": f"BD{4 * m}",
        "dimension": 2,
        "conductor": 2 * m,
        "generators": [[["z", "0"], ["0", f"1*z^{2 * m - 1}"]], [["0", "1"], ["-1", "0"]]],
    }


def trivial(n=2):
    return {"name": "trivial", "dimension": n, "conductor": 1, "generators": []}


def build(doc, max_order=20000):
    return enumerate_group(parse_group(doc), max_order)


def battery_48():
    """Isolated test groups of order <= 48: cyclic families, quaternion,
    binary dihedral samples."""
    docs = (
        [scalar_cyclic(k) for k in (2, 3, 4, 5, 7, 8, 12, 48)]
        + [a_type(k) for k in (2, 3, 4, 5, 6, 7, 8, 24)]
        + [antipodal(n) for n in (2, 3, 4)]
        + [quaternion()]
        + [binary_dihedral(m) for m in (2, 3, 4, 6, 12)]
    )
    return [build(d) for d in docs]


def battery_24():
    """Isolated test groups of order <= 24."""
    docs = (
        [scalar_cyclic(k) for k in range(2, 13)]
        + [a_type(k) for k in (2, 3, 4, 5, 6, 7, 8)]
        + [antipodal(n) for n in (2, 3)]
        + [quaternion()]
        + [binary_dihedral(m) for m in (2, 3, 4, 6)]
    )
    return [build(d) for d in docs]
