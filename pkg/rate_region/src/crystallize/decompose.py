"""
时分系数分解与边界探测

精确模式（n ≤ 5）按基本解枚举：对每个 m ≤ n，依字典序遍历 m 个角点的子集，
与 m 个（或 m-1 个）紧约束坐标组成方阵批量求解，取第一个可行解；
分解时先要求 R(θ) 逐坐标等于目标，找不到再放宽为 R(θ) ≥ 目标。
超出精确模式上限时退回 scipy 的 HiGHS 线性规划。
"""

from itertools import combinations, islice
from typing import Iterator, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.optimize import linprog

from rate_region.src.channel.model import ChannelInstance
from rate_region.src.config import CRYSTAL
from rate_region.src.crystallize.corners import corner_rate_matrix
from rate_region.src.errors import CapExceeded, DimensionMismatch, OutsideHull, RegionError, ZeroDirection
from rate_region.src.logger import get_logger

_SINGULAR_RTOL = 1e-12


def _subset_chunks(num_items: int, m: int, chunk: int) -> Iterator[NDArray[np.intp]]:
    """按字典序分块产出 m 元子集"""
    iterator = combinations(range(num_items), m)
    while True:
        block = list(islice(iterator, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.intp).reshape(len(block), m)


def _coordinate_sets(n: int, size: int) -> NDArray[np.intp]:
    combos = list(combinations(range(n), size))
    return np.array(combos, dtype=np.intp).reshape(len(combos), size)


def _batched_solve(matrices: NDArray[np.float64], rhs: NDArray[np.float64]) -> NDArray[np.float64]:
    """批量求解方阵系统；奇异系统的解填 nan"""
    size = matrices.shape[-1]
    det = np.linalg.det(matrices)
    scale = np.max(np.abs(matrices), axis=(-2, -1)) ** size
    good = np.abs(det) > _SINGULAR_RTOL * np.maximum(scale, np.finfo(float).tiny)
    solution = np.full(rhs.shape, np.nan)
    if np.any(good):
        solution[good] = np.linalg.solve(matrices[good], rhs[good][..., None])[..., 0]
    return solution


def _expand_theta(num_corners: int, subset: NDArray[np.intp], weights: NDArray[np.float64]) -> NDArray[np.float64]:
    theta = np.zeros(num_corners)
    theta[subset] = np.clip(weights, 0.0, None)
    return theta / theta.sum()


def _first_basic_solution(rates: NDArray[np.float64], target: NDArray[np.float64],
                          exact_match: bool) -> Optional[NDArray[np.float64]]:
    """字典序第一个可行基本解；exact_match 时要求 R(θ) 在每个坐标上等于 target"""
    num_corners, n = rates.shape
    theta_tol = CRYSTAL.NEGATIVE_THETA_TOLERANCE
    rate_tol = CRYSTAL.BOUNDARY_TOLERANCE

    for m in range(1, min(n, num_corners) + 1):
        coords = _coordinate_sets(n, m - 1)
        num_coords = len(coords)
        # 每个方程组：Σθ = 1，以及 coords 中每个坐标上的等式
        rhs_rows = np.concatenate([np.ones((num_coords, 1)), target[coords]], axis=1)

        for subsets in _subset_chunks(num_corners, m, CRYSTAL.ENUMERATION_CHUNK):
            sub = rates[subsets]                                      # (S, m, n)
            rows = np.transpose(sub[:, :, coords], (0, 2, 3, 1))      # (S, I, m-1, m)
            ones = np.ones(rows.shape[:2] + (1, m))
            matrices = np.concatenate([ones, rows], axis=2)           # (S, I, m, m)
            rhs = np.broadcast_to(rhs_rows, matrices.shape[:3])
            weights = _batched_solve(matrices, rhs)                   # (S, I, m)

            achieved = np.einsum("sim,smn->sin", weights, sub)
            if exact_match:
                reaches = np.all(np.abs(achieved - target) <= rate_tol, axis=-1)
            else:
                reaches = np.all(achieved >= target - rate_tol, axis=-1)
            feasible = (
                np.all(np.isfinite(weights), axis=-1)
                & np.all(weights >= -theta_tol, axis=-1)
                & reaches
            )
            hits = np.flatnonzero(feasible.ravel())
            if hits.size:
                s_idx, i_idx = divmod(int(hits[0]), num_coords)
                return _expand_theta(num_corners, subsets[s_idx], weights[s_idx, i_idx])
    return None


def decompose_exact(rates: NDArray[np.float64], target: NDArray[np.float64]) -> Optional[NDArray[np.float64]]:
    """
    在角点速率矩阵上做子集枚举分解

    先找 R(θ) = target 的基本解：边界上的目标落在至多 n 个角点张成的面上，
    取等的解不会在其他坐标上越过边界。找不到时（严格内点）再退到 R(θ) ≥ target。

    Args:
        rates: (K, n) 角点速率
        target: 目标速率点

    Returns:
        字典序第一个满足条件的 θ（非零项 ≤ n）；不存在时返回 None
    """
    theta = _first_basic_solution(rates, target, exact_match=True)
    if theta is None:
        theta = _first_basic_solution(rates, target, exact_match=False)
    return theta


def max_scale_exact(rates: NDArray[np.float64], direction: NDArray[np.float64]) -> Tuple[float, Optional[NDArray[np.float64]]]:
    """
    沿方向的最大缩放系数（基本可行解枚举）

    对 |S| = |I| = m 的每个 (S, I)，未知量 (θ_S, s) 满足 Σθ = 1 与
    Σ_k θ_k R_ki = s·d_i (i ∈ I)，再检查其余坐标。
    """
    num_corners, n = rates.shape
    theta_tol = CRYSTAL.NEGATIVE_THETA_TOLERANCE
    rate_tol = CRYSTAL.BOUNDARY_TOLERANCE
    best_s, best_theta = -np.inf, None

    for m in range(1, min(n, num_corners) + 1):
        coords = _coordinate_sets(n, m)
        num_coords = len(coords)
        rhs_rows = np.zeros((num_coords, m + 1))
        rhs_rows[:, 0] = 1.0
        direction_cols = -direction[coords]                            # (I, m)

        for subsets in _subset_chunks(num_corners, m, CRYSTAL.ENUMERATION_CHUNK):
            sub = rates[subsets]                                       # (S, m, n)
            num_subsets = len(subsets)
            rows = np.transpose(sub[:, :, coords], (0, 2, 3, 1))       # (S, I, m, m)
            s_col = np.broadcast_to(direction_cols[None, :, :, None], (num_subsets, num_coords, m, 1))
            equations = np.concatenate([rows, s_col], axis=3)          # (S, I, m, m+1)
            first = np.zeros((num_subsets, num_coords, 1, m + 1))
            first[..., 0, :m] = 1.0
            matrices = np.concatenate([first, equations], axis=2)      # (S, I, m+1, m+1)
            rhs = np.broadcast_to(rhs_rows, matrices.shape[:3])
            solution = _batched_solve(matrices, rhs)

            weights, scale = solution[..., :m], solution[..., m]
            achieved = np.einsum("sim,smn->sin", weights, sub)
            feasible = (
                np.all(np.isfinite(solution), axis=-1)
                & np.all(weights >= -theta_tol, axis=-1)
                & (scale >= -rate_tol)
                & np.all(achieved - scale[..., None] * direction >= -rate_tol, axis=-1)
            )
            if not np.any(feasible):
                continue
            candidate = np.where(feasible, scale, -np.inf).ravel()
            pick = int(np.argmax(candidate))
            if candidate[pick] > best_s + 1e-12:
                s_idx, i_idx = divmod(pick, num_coords)
                best_s = float(candidate[pick])
                best_theta = _expand_theta(num_corners, subsets[s_idx], weights[s_idx, i_idx])

    return best_s, best_theta


def max_scale_lp(rates: NDArray[np.float64], direction: NDArray[np.float64]) -> Tuple[float, NDArray[np.float64]]:
    """线性规划求最大缩放：max s，s.t. s·d ≤ R^T θ，Σθ = 1，θ ≥ 0"""
    num_corners, n = rates.shape
    cost = np.zeros(num_corners + 1)
    cost[-1] = -1.0
    a_ub = np.hstack([-rates.T, direction[:, None]])
    a_eq = np.concatenate([np.ones(num_corners), [0.0]])[None, :]
    result = linprog(
        cost, A_ub=a_ub, b_ub=np.zeros(n), A_eq=a_eq, b_eq=[1.0],
        bounds=[(0, None)] * (num_corners + 1), **CRYSTAL.get_linprog_kwargs(),
    )
    if not result.success:
        raise RegionError(f"线性规划求解失败: {result.message}")
    theta = np.clip(result.x[:num_corners], 0.0, None)
    return float(result.x[-1]), theta / theta.sum()


def _decompose_lp(rates: NDArray[np.float64], target: NDArray[np.float64]) -> Optional[NDArray[np.float64]]:
    num_corners = len(rates)
    bounds = [(0, None)] * num_corners
    # 先试 R(θ) = target，不可行时再放宽为 R(θ) ≥ target
    result = linprog(
        np.zeros(num_corners), A_eq=np.vstack([np.ones((1, num_corners)), rates.T]),
        b_eq=np.concatenate([[1.0], target]), bounds=bounds, **CRYSTAL.get_linprog_kwargs(),
    )
    if not result.success:
        result = linprog(
            np.zeros(num_corners), A_ub=-rates.T, b_ub=-(target - CRYSTAL.BOUNDARY_TOLERANCE),
            A_eq=np.ones((1, num_corners)), b_eq=[1.0], bounds=bounds, **CRYSTAL.get_linprog_kwargs(),
        )
    if not result.success:
        return None
    theta = np.clip(result.x, 0.0, None)
    return theta / theta.sum()


def _check_vector(ch: ChannelInstance, values: ArrayLike, label: str) -> NDArray[np.float64]:
    values = np.asarray(values, dtype=float)
    if values.shape != (ch.n,):
        raise DimensionMismatch(f"{label}长度必须为 {ch.n}，实际形状 {values.shape}")
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise RegionError(f"{label}必须是非负有限向量: {values.tolist()}")
    return values


def decompose(ch: ChannelInstance, target: ArrayLike) -> NDArray[np.float64]:
    """
    把目标速率点分解为角点的时分组合

    Returns:
        θ，满足 theta_rates(θ) ≥ target（边界目标取等），一般位置下非零项 ≤ n

    Raises:
        OutsideHull: 目标在晶体化凸包之外
    """
    target = _check_vector(ch, target, "目标速率")
    rates = corner_rate_matrix(ch)
    if ch.n <= CRYSTAL.EXACT_MAX_USERS:
        theta = decompose_exact(rates, target)
    else:
        get_logger().debug(f"n={ch.n} 超出精确枚举上限，改用线性规划")
        theta = _decompose_lp(rates, target)
    if theta is None:
        raise OutsideHull(f"目标 {target.tolist()} 在晶体化凸包之外")
    return theta


def max_scale(ch: ChannelInstance, direction: ArrayLike) -> Tuple[float, NDArray[np.float64]]:
    """
    沿非负方向探测凸包边界

    Returns:
        (s, θ)：s·direction 落在边界上的最大 s 与见证它的 θ

    Raises:
        ZeroDirection: 方向全为零
    """
    direction = _check_vector(ch, direction, "方向")
    if not np.any(direction > 0):
        raise ZeroDirection("方向向量不能全为零")
    rates = corner_rate_matrix(ch)
    if ch.n <= CRYSTAL.EXACT_MAX_USERS:
        scale, theta = max_scale_exact(rates, direction)
        if theta is None:
            raise RegionError("边界探测未找到可行基本解")
        return scale, theta
    return max_scale_lp(rates, direction)


def support_value(ch: ChannelInstance, weights: ArrayLike) -> Tuple[float, int]:
    """
    下闭凸包的支撑函数 h(w) = max_k w·R^(k)

    Returns:
        (h(w), 取到最大值的角点序号 k)
    """
    weights = _check_vector(ch, weights, "权重")
    values = corner_rate_matrix(ch) @ weights
    k = int(np.argmax(values))
    return float(values[k]), k + 1


def pareto_slack(ch: ChannelInstance, target: ArrayLike) -> float:
    """
    目标点上单个坐标还能提高的最大量

    对每个 i，在其余坐标不低于目标的前提下最大化 R_i(θ)；返回各坐标提升量的最大值。
    帕累托有效的边界点返回 0（数值误差内）。

    Raises:
        OutsideHull: 目标在凸包之外
    """
    target = _check_vector(ch, target, "目标速率")
    rates = corner_rate_matrix(ch)
    num_corners = len(rates)
    best = 0.0
    for i in range(ch.n):
        others = [j for j in range(ch.n) if j != i]
        result = linprog(
            -rates[:, i],
            A_ub=-rates[:, others].T if others else None,
            b_ub=-(target[others] - CRYSTAL.BOUNDARY_TOLERANCE) if others else None,
            A_eq=np.ones((1, num_corners)), b_eq=[1.0],
            bounds=[(0, None)] * num_corners, **CRYSTAL.get_linprog_kwargs(),
        )
        if not result.success:
            raise OutsideHull(f"目标 {target.tolist()} 在晶体化凸包之外")
        improvement = -result.fun - target[i]
        if improvement < -CRYSTAL.BOUNDARY_TOLERANCE:
            raise OutsideHull(f"目标 {target.tolist()} 在晶体化凸包之外")
        best = max(best, improvement)
    return best


def require_exact_mode(n: int) -> None:
    """精确模式的用户数上限检查"""
    if n > CRYSTAL.EXACT_MAX_USERS:
        raise CapExceeded(f"精确模式只支持 n ≤ {CRYSTAL.EXACT_MAX_USERS}，实际 n={n}")
