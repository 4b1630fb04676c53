"""
Dense linear algebra over K, on lists of lists of KElement.
"""
from .exceptions import DimensionError


def k_zero_matrix(config, rows, cols):
    zero = config.zero()
    return [[zero] * cols for _ in range(rows)]


def k_identity(config, size):
    zero, one = config.zero(), config.one()
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def k_shape(a):
    return (len(a), len(a[0]) if a else 0)


def k_sub(a, b):
    if k_shape(a) != k_shape(b):
        raise DimensionError(f"shape mismatch: {k_shape(a)} vs {k_shape(b)}")
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def k_scale(x, a):
    return [[x * y for y in row] for row in a]


def k_mul(a, b, config):
    rows, inner = k_shape(a)
    inner_b, cols = k_shape(b)
    if inner != inner_b:
        raise DimensionError(f"cannot multiply {k_shape(a)} by {k_shape(b)}")
    out = k_zero_matrix(config, rows, cols)
    for i in range(rows):
        for j in range(inner):
            if a[i][j].is_zero():
                continue
            for k in range(cols):
                if not b[j][k].is_zero():
                    out[i][k] = out[i][k] + a[i][j] * b[j][k]
    return out


def k_frobenius(a, k):
    return [[x.frobenius(k) for x in row] for row in a]


def k_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def k_power(a, exponent, config):
    result = k_identity(config, len(a))
    for _ in range(exponent):
        result = k_mul(result, a, config)
    return result


def solve_linear(rows, rhs, num_vars, config):
    """Gaussian elimination for ``rows @ x = rhs`` over K.

    Returns ``(solution, determined)`` where free variables are set to zero and
    ``determined[j]`` tells whether x_j is the same in every solution, or
    ``(None, None)`` when the system is inconsistent.
    """
    zero = config.zero()
    matrix = [list(row) + [value] for row, value in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(num_vars):
        pivot = next((i for i in range(r, len(matrix)) if not matrix[i][col].is_zero()), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = matrix[r][col].inverse()
        matrix[r] = [x * inv for x in matrix[r]]
        for i in range(len(matrix)):
            if i != r and not matrix[i][col].is_zero():
                factor = matrix[i][col]
                matrix[i] = [x - factor * y for x, y in zip(matrix[i], matrix[r])]
        pivots.append(col)
        r += 1
        if r == len(matrix):
            break
    for row in matrix[r:]:
        if not row[-1].is_zero():
            return None, None
    solution = [zero] * num_vars
    determined = [False] * num_vars
    pivot_set = set(pivots)
    for i, col in enumerate(pivots):
        solution[col] = matrix[i][-1]
        determined[col] = all(
            matrix[i][j].is_zero() for j in range(num_vars) if j not in pivot_set
        )
    return solution, determined
