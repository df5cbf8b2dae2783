"""Small example complexes used by tests and the CLI: simplices, cycles,
polygons, cubes.  Faces are sorted tuples of vertex labels; the (-1)-face is
the empty tuple."""

from itertools import combinations

from .poset import build_poset


def simplicial_from_top(top_faces):
    "Pure simplicial complex generated by its top faces (vertex tuples)."
    faces = {()}
    for t in top_faces:
        t = tuple(sorted(t))
        for r in range(1, len(t) + 1):
            faces.update(combinations(t, r))
    dims = {f: len(f) - 1 for f in faces}
    covers = [(x, y) for y in faces if y for x in combinations(y, len(y) - 1)]
    return build_poset(dims, covers)


def simplex(d):
    "The full d-simplex on vertices 0..d as a d-poset."
    return simplicial_from_top([tuple(range(d + 1))])


def simplex_boundary(d):
    "Boundary of the (d+1)-simplex: a d-poset."
    verts = tuple(range(d + 2))
    return simplicial_from_top(list(combinations(verts, d + 1)))


def graph_poset(vertices, edges):
    "A graph as a 1-poset: vertices, 2-element edge tuples, one empty face."
    dims = {(): -1}
    covers = []
    for v in vertices:
        dims[(v,)] = 0
        covers.append(((), (v,)))
    for e in edges:
        u, v = sorted(e)
        f = (u, v)
        dims[f] = 1
        covers.append(((u,), f))
        covers.append(((v,), f))
    return build_poset(dims, covers)


def cycle_graph(n):
    return graph_poset(range(n), [(i, (i + 1) % n) for i in range(n)])


def path_graph(n):
    "Path on n vertices (n >= 2)."
    return graph_poset(range(n), [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    left = [f"l{i}" for i in range(a)]
    right = [f"r{j}" for j in range(b)]
    return graph_poset(left + right, [(l, r) for l in left for r in right])


def polygon_complex(m):
    "A single m-gon 2-cell with its boundary cycle."
    dims = {(): -1}
    covers = []
    verts = [("v", i) for i in range(m)]
    for v in verts:
        dims[v] = 0
        covers.append(((), v))
    cell = ("c",)
    dims[cell] = 2
    for i in range(m):
        e = ("e", min(i, (i + 1) % m), max(i, (i + 1) % m))
        dims[e] = 1
        covers.append((verts[i], e))
        covers.append((verts[(i + 1) % m], e))
        covers.append((e, cell))
    return build_poset(dims, covers)


def cube_complex_single():
    "A single square (2-cube) with its faces."
    return polygon_complex(4)
