"""Complete k-ary trees with breadth-first labels and their edge colorings."""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TreeShape(BaseModel):
    """
    The complete k-ary tree T_{k,h}.

    The root is labeled 1, its children 2..k+1, their children k+2..k^2+k+1 and so
    on. An edge is named by its child endpoint, so the edges are 2..vertex_count.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"k": 2, "h": 3}},
    )

    k: int = Field(..., ge=1, description="Branching factor")
    h: int = Field(..., ge=1, description="Height (edges on a root-to-leaf path)")

    @property
    def vertex_count(self) -> int:
        """Number of vertices, (k^(h+1) - 1) / (k - 1), or h + 1 for a path."""
        if self.k == 1:
            return self.h + 1
        return (self.k ** (self.h + 1) - 1) // (self.k - 1)

    @property
    def edge_count(self) -> int:
        """Number of edges."""
        return self.vertex_count - 1

    @property
    def max_degree(self) -> int:
        """Largest vertex degree: k at the root, k + 1 at internal non-root vertices."""
        return self.k + 1 if self.h >= 2 else self.k

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.vertex_count:
            raise ValueError(f"vertex {v} is not in T_{{{self.k},{self.h}}}")

    def parent(self, v: int) -> int:
        """Parent of a non-root vertex."""
        self._check_vertex(v)
        if v == 1:
            raise ValueError("the root has no parent")
        return (v - 2) // self.k + 1

    def child_position(self, v: int) -> int:
        """1-based position of v among its siblings."""
        self._check_vertex(v)
        if v == 1:
            raise ValueError("the root has no child position")
        return (v - 2) % self.k + 1

    def depth(self, v: int) -> int:
        """Distance from the root."""
        self._check_vertex(v)
        d = 0
        while v > 1:
            v = (v - 2) // self.k + 1
            d += 1
        return d

    def children(self, v: int) -> range:
        """Children k(v-1)+2 .. kv+1, empty for leaves."""
        self._check_vertex(v)
        if self.is_leaf(v):
            return range(0)
        return range(self.k * (v - 1) + 2, self.k * v + 2)

    def is_leaf(self, v: int) -> bool:
        """Whether v lies at depth h."""
        return v > self.internal_count

    @property
    def internal_count(self) -> int:
        """Number of internal vertices (all vertices above depth h)."""
        if self.k == 1:
            return self.h
        return (self.k**self.h - 1) // (self.k - 1)

    def level(self, depth: int) -> range:
        """Labels of the vertices at the given depth."""
        if not 0 <= depth <= self.h:
            raise ValueError(f"depth {depth} is outside 0..{self.h}")
        if self.k == 1:
            return range(depth + 1, depth + 2)
        first = (self.k**depth - 1) // (self.k - 1) + 1
        return range(first, first + self.k**depth)

    def edges(self) -> range:
        """Edge names (child endpoints) in breadth-first order."""
        return range(2, self.vertex_count + 1)

    def parent_table(self) -> list[int]:
        """parents[v] for every label; entries 0 and 1 are 0."""
        parents = [0] * (self.vertex_count + 1)
        for v in self.edges():
            parents[v] = (v - 2) // self.k + 1
        return parents

    def depth_table(self) -> list[int]:
        """depths[v] for every label; entry 0 is unused."""
        depths = [0] * (self.vertex_count + 1)
        for v in self.edges():
            depths[v] = depths[(v - 2) // self.k + 1] + 1
        return depths

    def path_edges(self, u: int, v: int) -> list[int]:
        """Edges of the path from u to v, in order, named by child endpoint."""
        self._check_vertex(u)
        self._check_vertex(v)
        return walk_path(self.k, u, v, self.depth(u), self.depth(v))

    def __str__(self) -> str:
        return f"T_{{{self.k},{self.h}}}"


def walk_path(k: int, u: int, v: int, depth_u: int, depth_v: int) -> list[int]:
    """Path edges from u to v through their lowest common ancestor."""
    up: list[int] = []
    down: list[int] = []
    while depth_u > depth_v:
        up.append(u)
        u = (u - 2) // k + 1
        depth_u -= 1
    while depth_v > depth_u:
        down.append(v)
        v = (v - 2) // k + 1
        depth_v -= 1
    while u != v:
        up.append(u)
        down.append(v)
        u = (u - 2) // k + 1
        v = (v - 2) // k + 1
    down.reverse()
    return up + down


class EdgeColoring(BaseModel):
    """
    Colors of the edges of a TreeShape, indexed by child endpoint.

    ``colors[i]`` is the 1-based color of the edge to vertex i + 2, or None while
    the edge is uncolored. Properness is not enforced here.
    """

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "shape": {"k": 2, "h": 2},
                "colors": [1, 2, 2, 3, 3, 4],
                "palette_size": 4,
            }
        },
    )

    shape: TreeShape = Field(..., description="The tree being colored")
    colors: tuple[Optional[int], ...] = Field(..., description="Color of the edge to vertex i+2")
    palette_size: int = Field(..., ge=0, description="Number of admissible colors")

    @model_validator(mode="after")
    def colors_fit_shape_and_palette(self) -> "EdgeColoring":
        """One entry per edge, every color in 1..palette_size."""
        if len(self.colors) != self.shape.edge_count:
            raise ValueError(
                f"{self.shape} has {self.shape.edge_count} edges, got {len(self.colors)} colors"
            )
        for index, color in enumerate(self.colors):
            if color is not None and not 1 <= color <= self.palette_size:
                raise ValueError(
                    f"color {color} of edge {index + 2} is outside 1..{self.palette_size}"
                )
        return self

    def color(self, v: int) -> Optional[int]:
        """Color of the edge (parent(v), v)."""
        if not 2 <= v <= self.shape.vertex_count:
            raise ValueError(f"{self.shape} has no edge to vertex {v}")
        return self.colors[v - 2]

    @property
    def is_complete(self) -> bool:
        """Whether every edge carries a color."""
        return all(color is not None for color in self.colors)

    def colors_used(self) -> set[int]:
        """Distinct colors that appear."""
        return {color for color in self.colors if color is not None}

    def restrict(self, h: int) -> "EdgeColoring":
        """The coloring induced on the top h levels, T_{k,h}."""
        if not 1 <= h <= self.shape.h:
            raise ValueError(f"cannot restrict height {self.shape.h} to {h}")
        shape = TreeShape(k=self.shape.k, h=h)
        return EdgeColoring(
            shape=shape,
            colors=self.colors[: shape.edge_count],
            palette_size=self.palette_size,
        )

    def is_proper(self) -> bool:
        """Whether edges sharing a vertex always differ in color."""
        shape = self.shape
        for v in range(1, shape.internal_count + 1):
            seen = [self.colors[c - 2] for c in shape.children(v)]
            if v > 1:
                seen.append(self.colors[v - 2])
            present = [color for color in seen if color is not None]
            if len(present) != len(set(present)):
                return False
        return True
