"""Independent reference implementations used to check the library.

Everything here is deliberately written the slow, obvious way (explicit
loops, exact arithmetic, no numpy vectorization) and never calls into
the code paths it is checking.
"""

from fractions import Fraction


def otsu_scan(pixels) -> int:
    """Exhaustive 256-threshold between-class-variance argmax.

    Classes at threshold t are {v <= t} and {v > t}; thresholds leaving
    a class empty are skipped; ties break toward the smallest t. A
    single-intensity image yields that intensity. Scoring uses exact
    rational arithmetic.
    """
    values = [int(v) for row in pixels for v in row]
    best_t = None
    best_score = None
    for t in range(256):
        low = [v for v in values if v <= t]
        high = [v for v in values if v > t]
        if not low or not high:
            continue
        w0 = Fraction(len(low), len(values))
        w1 = Fraction(len(high), len(values))
        mu0 = Fraction(sum(low), len(low))
        mu1 = Fraction(sum(high), len(high))
        score = w0 * w1 * (mu0 - mu1) ** 2
        if best_score is None or score > best_score:
            best_t, best_score = t, score
    if best_t is None:
        return values[0]
    return best_t


def row_counts(pixels) -> list[int]:
    height = len(pixels)
    width = len(pixels[0])
    return [sum(1 for x in range(width) if pixels[y][x]) for y in range(height)]


def column_counts(pixels, y0: int, y1: int) -> list[int]:
    width = len(pixels[0])
    return [sum(1 for y in range(y0, y1) if pixels[y][x]) for x in range(width)]


def moment(pixels, p: int, q: int) -> int:
    total = 0
    for y, row in enumerate(pixels):
        for x, v in enumerate(row):
            if v:
                total += x ** p * y ** q
    return total


def foreground_bbox(pixels, x0: int, y0: int, x1: int, y1: int):
    """Min/max scan of foreground coordinates inside a window."""
    xs = []
    ys = []
    for y in range(y0, y1):
        for x in range(x0, x1):
            if pixels[y][x]:
                xs.append(x)
                ys.append(y)
    if not xs:
        return None
    return min(xs), min(ys), max(xs) + 1, max(ys) + 1


def count_components(pixels) -> int:
    """8-connected foreground components by iterative flood fill."""
    height = len(pixels)
    width = len(pixels[0])
    seen = [[False] * width for _ in range(height)]
    count = 0
    for sy in range(height):
        for sx in range(width):
            if not pixels[sy][sx] or seen[sy][sx]:
                continue
            count += 1
            stack = [(sx, sy)]
            seen[sy][sx] = True
            while stack:
                x, y = stack.pop()
                for dy in (-1, 0, 1):
                    for dx in (-1, 0, 1):
                        nx, ny = x + dx, y + dy
                        if 0 <= nx < width and 0 <= ny < height:
                            if pixels[ny][nx] and not seen[ny][nx]:
                                seen[ny][nx] = True
                                stack.append((nx, ny))
    return count


def connects_rows(pixels, top_row: int, bottom_row: int) -> bool:
    """Whether an 8-connected foreground path joins the two rows."""
    height = len(pixels)
    width = len(pixels[0])
    if not any(pixels[top_row]):
        return False
    seen = set()
    stack = [(x, top_row) for x in range(width) if pixels[top_row][x]]
    seen.update(stack)
    while stack:
        x, y = stack.pop()
        if y == bottom_row:
            return True
        for dy in (-1, 0, 1):
            for dx in (-1, 0, 1):
                nx, ny = x + dx, y + dy
                if 0 <= nx < width and 0 <= ny < height:
                    if pixels[ny][nx] and (nx, ny) not in seen:
                        seen.add((nx, ny))
                        stack.append((nx, ny))
    return False


def ring_transitions(ring) -> int:
    """0->1 transitions around a cyclic 8-value sequence."""
    extended = list(ring) + [ring[0]]
    return sum(1 for a, b in zip(extended, extended[1:]) if (a, b) == (0, 1))


def reference_thin(pixels) -> set[tuple[int, int]]:
    """Step-by-step trace of the thinning pass rule on a coordinate set.

    Marks every removable pixel against the pass-start snapshot, clears
    them together, repeats to the fixpoint. Returns the surviving
    foreground coordinates as (x, y) pairs.
    """
    height = len(pixels)
    width = len(pixels[0])
    fg = {(x, y) for y in range(height) for x in range(width) if pixels[y][x]}

    def ring_at(snapshot, x, y):
        return [
            int((x, y - 1) in snapshot),      # north
            int((x + 1, y - 1) in snapshot),  # north-east
            int((x + 1, y) in snapshot),      # east
            int((x + 1, y + 1) in snapshot),  # south-east
            int((x, y + 1) in snapshot),      # south
            int((x - 1, y + 1) in snapshot),  # south-west
            int((x - 1, y) in snapshot),      # west
            int((x - 1, y - 1) in snapshot),  # north-west
        ]

    def removable(snapshot, x, y):
        ring = ring_at(snapshot, x, y)
        north, east, south, west = ring[0], ring[2], ring[4], ring[6]
        if not 2 <= sum(ring) <= 6:
            return False
        if ring_transitions(ring) != 1:
            return False
        if north and east and west and ring_transitions(ring_at(snapshot, x, y - 1)) == 1:
            return False
        if north and east and south and ring_transitions(ring_at(snapshot, x + 1, y)) == 1:
            return False
        return True

    while True:
        marked = {(x, y) for (x, y) in fg if removable(fg, x, y)}
        if not marked:
            return fg
        fg -= marked


def nearest_neighbors(records, query, k: int):
    """Brute-force kNN over z-scored vectors; mirrors the tie rules.

    ``records`` are (label, raw_vector) pairs; returns (label, distance,
    ranked) like the classifier. Normalization statistics are recomputed
    here with two explicit passes.
    """
    dim = len(records[0][1])
    n = len(records)
    mean = [sum(vec[d] for _, vec in records) / n for d in range(dim)]
    var = [sum((vec[d] - mean[d]) ** 2 for _, vec in records) / n for d in range(dim)]
    std = [v ** 0.5 if v > 0 else 1.0 for v in var]

    def zscore(vec):
        return [(vec[d] - mean[d]) / std[d] for d in range(dim)]

    zq = zscore(query)
    scored = []
    for index, (label, vec) in enumerate(records):
        zv = zscore(vec)
        dist = sum((a - b) ** 2 for a, b in zip(zq, zv)) ** 0.5
        scored.append((dist, index, label))
    scored.sort(key=lambda s: (s[0], s[1]))
    top = scored[:k]
    ranked = [(label, dist) for dist, _, label in top]
    if k == 1:
        return ranked[0][0], ranked[0][1], ranked

    groups = {}
    for label, dist in ranked:
        groups.setdefault(label, []).append(dist)
    winner = min(groups.items(), key=lambda item: (-len(item[1]), sum(item[1]), item[0]))
    return winner[0], min(winner[1]), ranked


def mean_and_population_std(vectors):
    """Two-pass mean and population standard deviation per dimension."""
    dim = len(vectors[0])
    n = len(vectors)
    mean = [sum(v[d] for v in vectors) / n for d in range(dim)]
    std = []
    for d in range(dim):
        var = sum((v[d] - mean[d]) ** 2 for v in vectors) / n
        std.append(var ** 0.5 if var > 0 else 1.0)
    return mean, std
