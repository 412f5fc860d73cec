#!/usr/bin/env python3
"""Generate the bundled PD corpus from braid words.

Braid closures are drawn with strands flowing downward and the closure arcs
on the right. A crossing occupies adjacent strand positions with ports NW,
NE, SW, SE; the positive generator s_i takes the NE strand over to SW, the
negative one takes NW over to SE. PD tuples list ports counterclockwise from
the incoming under-strand, which makes them

    positive:  X[NW, SW, SE, NE]
    negative:  X[NE, NW, SW, SE]

Edges are relabeled along each component in flow order, so labels ascend with
a single wraparound and orientation inference in the parser reproduces the
braid orientation.
"""

import os
import sys

OUT = os.path.join(os.path.dirname(__file__), "..", "corpus")


def braid_closure_pd(word, strands):
    rows = len(word)
    # segment ids: (row, pos), row 0 = top; closure joins (rows, p) -> (0, p)
    segs = {}

    def seg(r, p):
        return segs.setdefault((r, p), len(segs))

    crossings = []  # (kind, ports dict with segment ids)
    for r, w in enumerate(word):
        i = abs(w)
        assert 1 <= i < strands
        ports = {
            "NW": seg(r, i),
            "NE": seg(r, i + 1),
            "SW": seg(r + 1, i),
            "SE": seg(r + 1, i + 1),
        }
        crossings.append((w > 0, ports))
        # untouched positions continue through this row: identify segments
        for p in range(1, strands + 1):
            if p not in (i, i + 1):
                segs[(r + 1, p)] = seg(r, p)
    # bottom closure: identify (rows, p) with (0, p)
    union = {}

    def find(x):
        while union.get(x, x) != x:
            x = union[x] = union.get(union[x], union[x])
        return union.get(x, x)

    for p in range(1, strands + 1):
        a, b = find(seg(rows, p)), find(seg(0, p))
        if a != b:
            union[a] = b

    def S(r, p):
        return find(seg(r, p))

    # rebuild crossing ports with unified ids
    cross = []
    for r, (pos, _) in enumerate(crossings):
        i = abs(word[r])
        cross.append(
            (
                pos,
                {
                    "NW": S(r, i),
                    "NE": S(r, i + 1),
                    "SW": S(r + 1, i),
                    "SE": S(r + 1, i + 1),
                },
            )
        )

    # flow successor of each segment: which (crossing, in-port) it feeds
    feeds = {}
    exits = {}
    for k, (pos, pp) in enumerate(cross):
        feeds[pp["NW"]] = (k, "NW")
        feeds[pp["NE"]] = (k, "NE")
        exits[(k, "NW")] = pp["SE"] if pos else pp["SE"]
        # under/over routing: strands swap positions either way
        exits[(k, "NW")] = pp["SE"]
        exits[(k, "NE")] = pp["SW"]

    # crossingless components: strand positions never entering a crossing
    n_unknots = 0
    all_ids = set()
    for p in range(1, strands + 1):
        all_ids.add(S(0, p))
    used = set()
    for k, (_, pp) in enumerate(cross):
        used.update(pp.values())
    n_unknots = len([i for i in all_ids if i not in used])

    # label segments along the flow
    label = {}
    nxt = 1
    for sid in sorted(used):
        if sid in label:
            continue
        cur = sid
        while cur not in label:
            label[cur] = nxt
            nxt += 1
            k, port = feeds[cur]
            cur = exits[(k, port)]

    lines = []
    for k, (pos, pp) in enumerate(cross):
        L = {q: label[s] for q, s in pp.items()}
        if pos:
            t = (L["NW"], L["SW"], L["SE"], L["NE"])
        else:
            t = (L["NE"], L["NW"], L["SW"], L["SE"])
        lines.append("X %d %d %d %d" % t)
    lines.extend(["O"] * n_unknots)
    return lines


CORPUS = {
    # name: (word, strands, comment)
    "unknot_0": ([], 1, "crossingless unknot"),
    "unknot_r1_pos": ([1], 2, "unknot with a positive kink"),
    "unknot_r1_neg": ([-1], 2, "unknot with a negative kink"),
    "hopf_pos": ([1, 1], 2, "positive Hopf link"),
    "hopf_neg": ([-1, -1], 2, "negative Hopf link"),
    "trefoil_right": ([1, 1, 1], 2, "right-handed trefoil 3_1"),
    "trefoil_left": ([-1, -1, -1], 2, "left-handed trefoil 3_1 mirror"),
    "figure8": ([1, -2, 1, -2], 3, "figure-eight knot 4_1"),
    "solomon_t24": ([1, 1, 1, 1], 2, "T(2,4) link"),
    "cinq_t25_left": ([-1] * 5, 2, "left T(2,5) = 5_1 mirror"),
    "t26_link": ([1] * 6, 2, "T(2,6) link"),
    "t27_71_left": ([-1] * 7, 2, "left T(2,7) = 7_1 mirror"),
    "t29_91_left": ([-1] * 9, 2, "left T(2,9) = 9_1 mirror"),
    "t33_link": ([1, 2] * 3, 3, "T(3,3) link, three components"),
    "t34_819": ([1, 2] * 4, 3, "T(3,4) = 8_19"),
    "t34_10cr": ([1, 2] * 4 + [3, 4], 5, "T(3,4) with two kinks, 10 crossings"),
    "braid_5a": ([1, 1, 1, 2, 2], 3, "closure of s1^3 s2^2"),
    "braid_62": ([1, 1, 1, -2, 1, -2], 3, "closure of s1^3 s2^- s1 s2^-"),
    "braid_63": ([1, -2, 1, -2, 1, -2], 3, "closure of (s1 s2^-)^3"),
    "braid_7a": ([1, 1, -2, 1, 1, -2, 1], 3, "7-crossing braid knot"),
    "braid_9a": ([1, 1, 1, 2, -1, 2, 2, 1, 2], 3, "9-crossing braid closure"),
    "tref_r1": ([1, 1, 1, 2], 3, "right trefoil plus an R1 kink"),
    "tref_r2": ([1, 1, 1, 1, -1], 2, "right trefoil plus an R2 pair"),
    "tref_b": ([1, 2, 1, 2], 3, "right trefoil as (s1 s2)^2"),
    "tref_b_r3": ([2, 1, 2, 2], 3, "same closure after one R3 move"),
}


def main():
    os.makedirs(OUT, exist_ok=True)
    for name, (word, strands, comment) in sorted(CORPUS.items()):
        lines = braid_closure_pd(word, strands)
        path = os.path.join(OUT, name + ".pd")
        with open(path, "w") as f:
            f.write("# %s\n" % comment)
            f.write("# braid word: %s on %d strands\n" % (word, strands))
            for ln in lines:
                f.write(ln + "\n")
        print("wrote", path, "(%d crossings)" % len([l for l in lines if l.startswith("X")]))


if __name__ == "__main__":
    sys.exit(main())
