"""The two cospectral 9-vertex graphs of the worked example, with printed values."""

from .graph import Graph

EXAMPLE_A = [
    [0, 1, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 1, 1, 1, 0, 1, 0, 0],
    [0, 1, 0, 1, 0, 0, 1, 0, 0],
    [1, 1, 1, 0, 1, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
]

EXAMPLE_B = [
    [0, 1, 1, 0, 1, 1, 0, 0, 1],
    [1, 0, 1, 1, 0, 0, 0, 0, 0],
    [1, 1, 0, 1, 1, 0, 1, 0, 0],
    [0, 1, 1, 0, 1, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 1, 0],
    [0, 0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
]

# Printed with leading -x^9, i.e. (-1)^9 det(xI - A); index = degree.
PRINTED_PHI = (-2, -4, 16, 27, -24, -37, 10, 14, 0, -1)
PRINTED_PHI_COMPLEMENT_G = (4, 31, 66, -3, -108, -43, 38, 22, 0, -1)
PRINTED_PHI_COMPLEMENT_H = (4, 35, 74, -7, -112, -43, 38, 22, 0, -1)
PRINTED_ETA_G = 1
PRINTED_ETA_H = 587
PRINTED_WALKS_G = (9, 28, 104, 380, 1412, 5210, 19308, 71376, 264260, 977480)
PRINTED_WALKS_H = (9, 28, 104, 380, 1408, 5198, 19248, 71176, 263452, 974620)


def example_pair() -> tuple[Graph, Graph]:
    return Graph.from_matrix(EXAMPLE_A), Graph.from_matrix(EXAMPLE_B)


def monic_from_printed(coeffs, n=9):
    """Undo the (-1)^n sign of the printed expansions."""
    return [(-1) ** n * c for c in coeffs]
