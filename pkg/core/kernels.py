"""
Компилируемые (numba) ядра скользящего окна 3x3.

Окно хранится как массив (9, 3) float64 в построчном порядке, центр лежит в
элементе 4. Изображения передаются с рамкой в один пиксель (повтор краёв),
поэтому пиксель (y, x) исходного изображения лежит в pad[y + 1, x + 1].
Все ядра освобождают GIL и обрабатывают полосу строк [y0, y1), так что
полосы можно раздавать потокам без изменения результата.
"""

import math

import numpy as np
from numba import njit

from config import TIE_TOLERANCE, WINDOW_CENTER, WINDOW_PAIRS, WINDOW_SIZE

MODE_S = 0
MODE_HSL = 1
MODE_RGB = 2

KIND_VMF = 0
KIND_BVDF = 1
KIND_DDF = 2

_CENTER = WINDOW_CENTER
_SIZE = WINDOW_SIZE
_PAIRS = WINDOW_PAIRS


@njit(cache=True, nogil=True)
def hsl_of(r, g, b):
    mx = max(r, g, b)
    mn = min(r, g, b)
    chroma = mx - mn
    light = (mx + mn) / 2.0
    if chroma == 0.0:
        return 0.0, 0.0, light
    sat = 100.0 * chroma / (255.0 - abs(mx + mn - 255.0))
    if mx == r:
        hue = 60.0 * ((g - b) / chroma)
        if hue < 0.0:
            hue += 360.0
    elif mx == g:
        hue = 60.0 * ((b - r) / chroma + 2.0)
    else:
        hue = 60.0 * ((r - g) / chroma + 4.0)
    return hue, sat, light


@njit(cache=True, nogil=True)
def hsl_plane(rgb):
    height, width = rgb.shape[0], rgb.shape[1]
    out = np.empty((height, width, 3))
    for y in range(height):
        for x in range(width):
            h, s, l = hsl_of(
                float(rgb[y, x, 0]), float(rgb[y, x, 1]), float(rgb[y, x, 2])
            )
            out[y, x, 0] = h
            out[y, x, 1] = s
            out[y, x, 2] = l
    return out


@njit(cache=True, nogil=True)
def hsl_distance_of(h1, s1, l1, h2, s2, l2):
    dl = l1 - l2
    v = s1 * s1 + s2 * s2 - 2.0 * s1 * s2 * math.cos(math.radians(h1 - h2))
    v += dl * dl
    if v < 0.0:
        v = 0.0
    return math.sqrt(v)


@njit(cache=True, nogil=True)
def similar_of(h1, s1, l1, h2, s2, l2, ht, st, lt):
    # Порядок проверок H, S, L; возвращает и число сравнений компонент.
    dh = abs(h1 - h2)
    if dh > 180.0:
        dh = 360.0 - dh
    if dh > ht:
        return False, 1
    if abs(s1 - s2) > st:
        return False, 2
    if abs(l1 - l2) > lt:
        return False, 3
    return True, 3


@njit(cache=True, nogil=True)
def pair_distance(win, i, j, p):
    d0 = win[i, 0] - win[j, 0]
    d1 = win[i, 1] - win[j, 1]
    d2 = win[i, 2] - win[j, 2]
    if p == 1:
        return abs(d0) + abs(d1) + abs(d2)
    return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)


@njit(cache=True, nogil=True)
def pair_angle(win, i, j):
    dot = win[i, 0] * win[j, 0] + win[i, 1] * win[j, 1] + win[i, 2] * win[j, 2]
    na = win[i, 0] * win[i, 0] + win[i, 1] * win[i, 1] + win[i, 2] * win[i, 2]
    nb = win[j, 0] * win[j, 0] + win[j, 1] * win[j, 1] + win[j, 2] * win[j, 2]
    if na == 0.0 or nb == 0.0:
        return 0.0
    c = dot / math.sqrt(na * nb)
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return math.acos(c)


@njit(cache=True, nogil=True)
def _argmin_first(values):
    # Суммы с погрешностью округления в пределах TIE_TOLERANCE считаются равными.
    best = 0
    for i in range(1, values.shape[0]):
        if values[i] < values[best] - TIE_TOLERANCE * max(1.0, abs(values[best])):
            best = i
    return best


@njit(cache=True, nogil=True)
def vmf_index(win, p, sums):
    n = win.shape[0]
    for i in range(n):
        sums[i] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = pair_distance(win, i, j, p)
            sums[i] += d
            sums[j] += d
    return _argmin_first(sums)


@njit(cache=True, nogil=True)
def bvdf_index(win, sums):
    n = win.shape[0]
    for i in range(n):
        sums[i] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            a = pair_angle(win, i, j)
            sums[i] += a
            sums[j] += a
    return _argmin_first(sums)


@njit(cache=True, nogil=True)
def ddf_index(win, gamma, angles, dists):
    n = win.shape[0]
    for i in range(n):
        angles[i] = 0.0
        dists[i] = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            a = pair_angle(win, i, j)
            d = pair_distance(win, i, j, 2)
            angles[i] += a
            angles[j] += a
            dists[i] += d
            dists[j] += d
    for i in range(n):
        angles[i] = angles[i] ** gamma * dists[i] ** (1.0 - gamma)
    return _argmin_first(angles)


@njit(cache=True, nogil=True)
def _pad_distance(pad, y, x, dy, dx, p):
    d0 = pad[y + 1, x + 1, 0] - pad[y + dy, x + dx, 0]
    d1 = pad[y + 1, x + 1, 1] - pad[y + dy, x + dx, 1]
    d2 = pad[y + 1, x + 1, 2] - pad[y + dy, x + dx, 2]
    if p == 1:
        return abs(d0) + abs(d1) + abs(d2)
    return math.sqrt(d0 * d0 + d1 * d1 + d2 * d2)


@njit(cache=True, nogil=True)
def peer_scan(rgb_pad, hsl_pad, y, x, mode, m, t0, t1, t2, p):
    """
    Ищет m похожих соседей пикселя pad[y + 1, x + 1] в порядке окна.
    Возвращает (чистый ли пиксель, число проверок, число сравнений компонент).
    """
    ch = hsl_pad[y + 1, x + 1, 0]
    cs = hsl_pad[y + 1, x + 1, 1]
    cl = hsl_pad[y + 1, x + 1, 2]
    similar = 0
    checks = 0
    comps = 0
    for k in range(_SIZE):
        if k == _CENTER:
            continue
        dy = k // 3
        dx = k % 3
        checks += 1
        if mode == MODE_S:
            ok, c = similar_of(
                ch, cs, cl,
                hsl_pad[y + dy, x + dx, 0],
                hsl_pad[y + dy, x + dx, 1],
                hsl_pad[y + dy, x + dx, 2],
                t0, t1, t2,
            )
            comps += c
        elif mode == MODE_HSL:
            ok = hsl_distance_of(
                ch, cs, cl,
                hsl_pad[y + dy, x + dx, 0],
                hsl_pad[y + dy, x + dx, 1],
                hsl_pad[y + dy, x + dx, 2],
            ) <= t0
        else:
            ok = _pad_distance(rgb_pad, y, x, dy, dx, p) <= t0
        if ok:
            similar += 1
            if similar >= m:
                return True, checks, comps
        elif similar + (_SIZE - 1 - checks) < m:
            return False, checks, comps
    return False, checks, comps


@njit(cache=True, nogil=True)
def gather(pad, y, x, win):
    k = 0
    for dy in range(3):
        for dx in range(3):
            win[k, 0] = pad[y + dy, x + dx, 0]
            win[k, 1] = pad[y + dy, x + dx, 1]
            win[k, 2] = pad[y + dy, x + dx, 2]
            k += 1


@njit(cache=True, nogil=True)
def switching_rows(
    rgb_pad, hsl_pad, out, noisy, checks_out, y0, y1, mode, m, t0, t1, t2, p
):
    # Окно RGB собирается только для пикселей, признанных шумом.
    width = out.shape[1]
    win = np.empty((_SIZE, 3))
    sums = np.empty(_SIZE)
    switched = 0
    evals = 0
    comps = 0
    for y in range(y0, y1):
        for x in range(width):
            clean, nchecks, ncomps = peer_scan(
                rgb_pad, hsl_pad, y, x, mode, m, t0, t1, t2, p
            )
            evals += nchecks
            comps += ncomps
            checks_out[y, x] = nchecks
            if clean:
                out[y, x, 0] = rgb_pad[y + 1, x + 1, 0]
                out[y, x, 1] = rgb_pad[y + 1, x + 1, 1]
                out[y, x, 2] = rgb_pad[y + 1, x + 1, 2]
                continue
            gather(rgb_pad, y, x, win)
            k = vmf_index(win, 2, sums)
            evals += _PAIRS
            switched += 1
            noisy[y, x] = True
            out[y, x, 0] = win[k, 0]
            out[y, x, 1] = win[k, 1]
            out[y, x, 2] = win[k, 2]
    return switched, evals, comps


@njit(cache=True, nogil=True)
def vector_rows(rgb_pad, out, y0, y1, kind, p, gamma):
    width = out.shape[1]
    win = np.empty((_SIZE, 3))
    first = np.empty(_SIZE)
    second = np.empty(_SIZE)
    evals = 0
    for y in range(y0, y1):
        for x in range(width):
            gather(rgb_pad, y, x, win)
            if kind == KIND_VMF:
                k = vmf_index(win, p, first)
            elif kind == KIND_BVDF:
                k = bvdf_index(win, first)
            else:
                k = ddf_index(win, gamma, first, second)
            evals += _PAIRS
            out[y, x, 0] = win[k, 0]
            out[y, x, 1] = win[k, 1]
            out[y, x, 2] = win[k, 2]
    return evals
