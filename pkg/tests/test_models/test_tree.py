"""Tests for tree shapes and edge colorings."""

import pytest
from pydantic import ValidationError

from nonrep.models.tree import EdgeColoring, TreeShape, walk_path


class TestTreeShape:
    """Test the breadth-first labeling of T_{k,h}."""

    @pytest.mark.parametrize(
        ("k", "h", "vertices", "edges"),
        [(1, 1, 2, 1), (1, 5, 6, 5), (2, 2, 7, 6), (2, 3, 15, 14), (3, 2, 13, 12), (4, 3, 85, 84)],
    )
    def test_counts(self, k: int, h: int, vertices: int, edges: int) -> None:
        """Test vertex and edge counts."""
        shape = TreeShape(k=k, h=h)

        assert shape.vertex_count == vertices
        assert shape.edge_count == edges
        assert list(shape.edges()) == list(range(2, vertices + 1))

    def test_parent_and_children_are_inverse(self) -> None:
        """Test that every child of v has parent v."""
        shape = TreeShape(k=3, h=3)

        for v in range(1, shape.internal_count + 1):
            for child in shape.children(v):
                assert shape.parent(child) == v

    @pytest.mark.parametrize(("k", "h"), [(1, 40), (2, 15), (3, 9), (5, 6), (10, 4), (300, 2)])
    def test_labels_round_trip(self, k: int, h: int) -> None:
        """Test parent, child position, depth and levels against each other on every vertex."""
        shape = TreeShape(k=k, h=h)
        depths = shape.depth_table()
        parents = shape.parent_table()

        assert shape.vertex_count <= 100_000
        for v in shape.edges():
            parent = shape.parent(v)
            assert parents[v] == parent
            assert shape.children(parent)[shape.child_position(v) - 1] == v
            assert v in shape.level(depths[v])
        assert sum(len(shape.level(depth)) for depth in range(h + 1)) == shape.vertex_count

    def test_labels_of_binary_tree(self, binary_tree_h3: TreeShape) -> None:
        """Test the labels of the first levels of T_{2,3}."""
        assert list(binary_tree_h3.children(1)) == [2, 3]
        assert list(binary_tree_h3.children(3)) == [6, 7]
        assert binary_tree_h3.child_position(7) == 2
        assert list(binary_tree_h3.level(3)) == list(range(8, 16))
        assert binary_tree_h3.is_leaf(8)
        assert not binary_tree_h3.is_leaf(7)
        assert list(binary_tree_h3.children(15)) == []

    def test_depth_table_matches_depth(self, binary_tree_h3: TreeShape) -> None:
        """Test the precomputed depths."""
        depths = binary_tree_h3.depth_table()

        for v in range(1, binary_tree_h3.vertex_count + 1):
            assert depths[v] == binary_tree_h3.depth(v)

    def test_max_degree(self) -> None:
        """Test that only trees of height 1 have maximum degree k."""
        assert TreeShape(k=3, h=1).max_degree == 3
        assert TreeShape(k=3, h=2).max_degree == 4

    def test_root_has_no_parent(self, binary_tree_h3: TreeShape) -> None:
        """Test that asking for the root's parent fails."""
        with pytest.raises(ValueError):
            binary_tree_h3.parent(1)

    def test_vertex_outside_tree_is_rejected(self, binary_tree_h3: TreeShape) -> None:
        """Test label range checks."""
        with pytest.raises(ValueError):
            binary_tree_h3.depth(16)

    def test_invalid_parameters(self) -> None:
        """Test that k and h must be positive."""
        with pytest.raises(ValidationError):
            TreeShape(k=0, h=2)
        with pytest.raises(ValidationError):
            TreeShape(k=2, h=0)

    def test_str(self) -> None:
        """Test the display name."""
        assert str(TreeShape(k=2, h=4)) == "T_{2,4}"


class TestPaths:
    """Test path extraction."""

    def test_path_between_leaves_turns_at_lca(self, binary_tree_h3: TreeShape) -> None:
        """Test a leaf-to-leaf path through the root."""
        assert binary_tree_h3.path_edges(8, 15) == [8, 4, 2, 3, 7, 15]

    def test_path_to_ancestor_is_monotone(self, binary_tree_h3: TreeShape) -> None:
        """Test a path climbing to an ancestor."""
        assert binary_tree_h3.path_edges(9, 1) == [9, 4, 2]
        assert binary_tree_h3.path_edges(1, 9) == [2, 4, 9]

    def test_walk_path_between_siblings(self) -> None:
        """Test the path between two siblings."""
        assert walk_path(3, 2, 4, 1, 1) == [2, 4]


class TestEdgeColoring:
    """Test edge colorings."""

    def test_colors_must_match_edge_count(self) -> None:
        """Test that the number of colors must equal the number of edges."""
        with pytest.raises(ValidationError, match="edges"):
            EdgeColoring(shape=TreeShape(k=2, h=2), colors=(1, 2, 3), palette_size=4)

    def test_colors_must_fit_palette(self) -> None:
        """Test that colors lie in 1..palette."""
        with pytest.raises(ValidationError, match="outside"):
            EdgeColoring(shape=TreeShape(k=2, h=1), colors=(1, 5), palette_size=4)

    def test_uncolored_edges(self) -> None:
        """Test that None marks an uncolored edge."""
        coloring = EdgeColoring(shape=TreeShape(k=2, h=1), colors=(1, None), palette_size=2)

        assert not coloring.is_complete
        assert coloring.color(3) is None
        assert coloring.colors_used() == {1}

    def test_restrict_takes_top_levels(self) -> None:
        """Test restriction to a smaller height."""
        coloring = EdgeColoring(
            shape=TreeShape(k=2, h=2), colors=(1, 2, 2, 3, 3, 4), palette_size=4
        )

        top = coloring.restrict(1)

        assert top.shape == TreeShape(k=2, h=1)
        assert top.colors == (1, 2)

    def test_is_proper(self) -> None:
        """Test properness at the root and at inner vertices."""
        proper = EdgeColoring(shape=TreeShape(k=2, h=2), colors=(1, 2, 2, 3, 3, 4), palette_size=4)
        clash = EdgeColoring(shape=TreeShape(k=2, h=2), colors=(1, 2, 1, 3, 3, 4), palette_size=4)

        assert proper.is_proper()
        assert not clash.is_proper()
