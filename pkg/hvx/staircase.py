"""
Staircase: the two-dimensional union of boxes [p, ref] kept in an ordered container.

Points are stored with strictly ascending x and strictly descending y, so the
set is always mutually nondominated. Entries live in a SortedKeyList keyed on
x, so inserts and deletes stay logarithmic wherever they land.
"""

from operator import itemgetter
from typing import Any, Iterator, List, Tuple

from sortedcontainers import SortedKeyList

Entry = Tuple[float, float, Any]
Box2D = Tuple[float, float, float, float]


class Staircase:
    """
    Incremental 2D union-of-boxes with a movable reference corner.

    Attributes:
        ref_x: Right edge of every box
        ref_y: Top edge of every box
        area: Area currently covered inside [.., ref_x] x [.., ref_y]
    """

    def __init__(self, ref_x: float, ref_y: float):
        self._entries = SortedKeyList(key=itemgetter(0))
        self.ref_x = float(ref_x)
        self.ref_y = float(ref_y)
        self.area = 0.0

    def __len__(self) -> int:
        return len(self._entries)

    def __getitem__(self, index: int) -> Entry:
        """(x, y, key) of the index-th point in ascending x."""
        return self._entries[index]

    def __iter__(self) -> Iterator[Entry]:
        return iter(self._entries)

    def __repr__(self) -> str:
        return f"Staircase(n={len(self)}, ref=({self.ref_x}, {self.ref_y}), area={self.area})"

    def points(self) -> List[Tuple[float, float]]:
        return [(x, y) for x, y, _ in self._entries]

    def rightmost_at_or_left(self, x: float) -> int:
        """Index of the last point with x_i <= x, or -1."""
        return self._entries.bisect_key_right(x) - 1

    def dominated(self, x: float, y: float) -> bool:
        """Whether some stored point weakly dominates (x, y)."""
        j = self.rightmost_at_or_left(x)
        return j >= 0 and self._entries[j][1] <= y

    def insert(self, x: float, y: float, key: Any = None) -> Tuple[float, List[Entry]]:
        """
        Add the box [(x, y), ref] to the union.

        Points outside the reference box and points weakly dominated by a stored
        point are not stored and gain nothing.

        Returns:
            Tuple of (area gained, stored points removed because (x, y) dominates them)
        """
        x = float(x)
        y = float(y)
        if x >= self.ref_x or y >= self.ref_y or self.dominated(x, y):
            return 0.0, []

        entries = self._entries
        i = entries.bisect_key_left(x)
        removed: List[Entry] = []
        for entry in entries.islice(i):
            if entry[1] < y:
                break
            removed.append(entry)
        k = i + len(removed)

        gain = 0.0
        x_cur = x
        height = entries[i - 1][1] if i > 0 else self.ref_y
        for rx, ry, _ in removed:
            gain += (rx - x_cur) * (height - y)
            x_cur = rx
            height = ry
        x_next = entries[k][0] if k < len(entries) else self.ref_x
        gain += (x_next - x_cur) * (height - y)

        if removed:
            del entries[i:k]
        entries.add((x, y, key))
        self.area += gain
        return gain, removed

    def clip_right(self, new_ref_x: float) -> float:
        """Move the right edge left to new_ref_x; returns the area lost."""
        new_ref_x = float(new_ref_x)
        if new_ref_x >= self.ref_x:
            return 0.0
        entries = self._entries
        j = entries.bisect_key_left(new_ref_x)
        tail = list(entries.islice(j))
        lost = 0.0
        if j > 0:
            edge = tail[0][0] if tail else self.ref_x
            lost += (edge - new_ref_x) * (self.ref_y - entries[j - 1][1])
        for t, (x, y, _) in enumerate(tail):
            nxt = tail[t + 1][0] if t + 1 < len(tail) else self.ref_x
            lost += (nxt - x) * (self.ref_y - y)
        if tail:
            del entries[j:]
        self.ref_x = new_ref_x
        self.area -= lost
        return lost

    def clip_top(self, new_ref_y: float) -> float:
        """Move the top edge down to new_ref_y; returns the area lost."""
        new_ref_y = float(new_ref_y)
        if new_ref_y >= self.ref_y:
            return 0.0
        entries = self._entries
        head: List[Entry] = []
        boundary = None
        for entry in entries:
            if entry[1] < new_ref_y:
                boundary = entry
                break
            head.append(entry)
        lost = 0.0
        upper = self.ref_y
        for x, y, _ in head:
            lost += (upper - y) * (self.ref_x - x)
            upper = y
        if boundary is not None:
            lost += (upper - new_ref_y) * (self.ref_x - boundary[0])
        if head:
            del entries[: len(head)]
        self.ref_y = new_ref_y
        self.area -= lost
        return lost

    def covered_area(self) -> float:
        """Area recomputed from scratch."""
        total = 0.0
        pts = self.points()
        for t, (x, y) in enumerate(pts):
            nxt = pts[t + 1][0] if t + 1 < len(pts) else self.ref_x
            total += (nxt - x) * (self.ref_y - y)
        return total

    def complement_boxes(self, x_lo: float, y_lo: float) -> List[Box2D]:
        """
        Disjoint boxes (x0, x1, y0, y1) tiling [x_lo, ref_x] x [y_lo, ref_y] minus the union.

        Assumes every stored point weakly dominates nothing below (x_lo, y_lo),
        i.e. xs >= x_lo and ys >= y_lo. Empty boxes are skipped.
        """
        boxes: List[Box2D] = []
        left = x_lo
        top = self.ref_y
        for x, y, _ in self._entries:
            if x > left and top > y_lo:
                boxes.append((left, x, y_lo, top))
            left = max(left, x)
            top = y
        if self.ref_x > left and top > y_lo:
            boxes.append((left, self.ref_x, y_lo, top))
        return boxes
