"""Walk through the degree-3 block at p = 3.

Enumerates the indecomposable polynomial modules of degree 3, partitions
them into blocks, builds the AR quiver of the block containing V(3), and
matches its stable part against the Z[A_3]/<tau^3> template.
"""

from grquiver import arquiver as AQ

P, D = 3, 3


def main() -> None:
    cands = AQ.enumerate_degree_candidates(P, D)
    print(f"{len(cands)} indecomposable polynomial modules of degree {D}:")
    for lab, m in cands:
        print(f"  {str(lab):18} dim {m.dim}")

    blocks = AQ.partition_blocks(cands)
    print(f"\n{len(blocks)} linkage blocks; "
          f"{AQ.count_non_semisimple_blocks(P, D)} non-semisimple")

    q = AQ.schur_block_quiver(P, D, "V(3)")
    print(f"\nblock quiver of V(3): {len(q.vertices)} vertices, "
          f"{len(q.arrows)} arrows")
    for name, v in sorted(q.vertices.items()):
        flags = []
        if v.projective_in_poly:
            flags.append("proj")
        if v.injective_in_poly:
            flags.append("inj")
        print(f"  {name:18} dim {v.module.dim:2} {' '.join(flags)}")

    s = q.stable_part()
    match = AQ.template_match(s, 3, 3)
    print(f"\nstable part: {len(s.vertices)} vertices, "
          f"{len(s.arrows)} arrows")
    print("template Z[A_3]/tau^3:", "MATCH" if match else "NO MATCH")


if __name__ == "__main__":
    main()
