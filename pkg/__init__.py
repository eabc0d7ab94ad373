"""ospq package root: exact quantum osp(1|2n) invariants of framed links and 3-manifolds."""
