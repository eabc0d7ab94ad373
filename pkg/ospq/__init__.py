"""Exact quantum osp(1|2n) engine: cyclotomic arithmetic, R-matrices, tangles and 3-manifold invariants."""
