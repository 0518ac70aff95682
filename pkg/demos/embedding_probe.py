"""Weighted little-l embeddings and the finite sections that expose them.

Whether l^q1 with weight <k>^s1 embeds into l^q2 with weight <k>^s2
depends on the gap between 1/q2 and 1/q1 and the weight difference.
The closed-form predicate answers instantly; the witness searches a
finite section for a coefficient profile whose norm ratio blows past a
threshold, and reports the section size at which the ratio got there.
Agreement between the two on both sides of the boundary is the point.
"""

from fiolab import INF, embedding_holds, embedding_witness

cases = [
    (1.0, 0.0, INF, 0.0),
    (2.0, 0.0, 1.0, 0.0),
    (2.0, 0.75, 1.0, 0.0),
    (INF, 2.0, 1.0, 0.0),
    (INF, 1.0, 1.0, 0.5),
    (2.0, 0.0, 2.0, 1.0),
    (1.0, 3.0, 2.0, 0.0),
]

print("q1    s1    q2    s2    predicate  witness  ratio      support")
for q1, s1, q2, s2 in cases:
    holds = embedding_holds(q1, s1, q2, s2)
    rep = embedding_witness(q1, s1, q2, s2, section=64, threshold=7.0)
    mark = "ok" if rep.embedded == holds else "DISAGREE"
    print(
        f"{q1:4g}  {s1:4g}  {q2:4g}  {s2:4g}    "
        f"{str(holds):5s}      {str(rep.embedded):5s}  "
        f"{rep.best_ratio:9.3f}  {len(rep.support):4d}  {mark}"
    )

print()
print("embedded pairs keep the worst finite-section ratio below the")
print("threshold; failing pairs push it past within a short prefix of")
print("the section, and the support column shows how short.")
