"""Gallery: classify a table of trinomial hypersurfaces.

For each shape we print the equation, the rigidity verdict with its
witnesses, the detected family, the Makar-Limanov generators, factoriality
data, and the torus rank.  Run:

    python demos/01_classification_gallery.py
"""

from trinomial_orbits import (
    QQ,
    factoriality,
    family_of,
    ml_generators,
    rigidity_classify,
    symmetry_group,
    torus_lattice,
    validate_shape,
)

GALLERY = [
    ("y^2 + z^3 + s^3 (rigid)", [[2], [3], [3]]),
    ("x*y^2 + z^3 + s^3", [[1, 2], [3], [3]]),
    ("x1*x2*y^2 + z^3 + s^3", [[1, 1, 2], [3], [3]]),
    ("x*y1^2*y2^2 + z^3 + s^3", [[1, 2, 2], [3], [3]]),
    ("1 + x*y1^3*y2^3 + z1^3*z2^3", [[], [1, 3, 3], [3, 3]]),
    ("all-even pair", [[2, 2], [2, 2], [5]]),
    ("all-ones group", [[1, 1], [1, 1, 4], [7]]),
    ("two power-one groups", [[1, 2], [1, 3], [4]]),
    ("pairwise coprime, factorial", [[2], [3], [5]]),
]


def main():
    for title, raw in GALLERY:
        shape = validate_shape(raw)
        verdict = rigidity_classify(shape)
        tag = family_of(shape)
        ml = ml_generators(shape)
        fact = factoriality(shape)
        print(f"== {title}  {shape}")
        print(f"   equation        {shape.equation(QQ)}")
        line = verdict.tag
        if verdict.h_type:
            line += f" ({verdict.h_type})"
        if verdict.witnesses:
            line += f"  witnesses {list(verdict.witnesses)}"
        print(f"   rigidity        {line}")
        print(f"   family          {tag.to_json()}")
        print(f"   ML generators   {ml.to_json(shape)}")
        print(f"   factoriality    {fact.to_json()}")
        print(f"   torus rank      {torus_lattice(shape).rank} (= n-2)")
        print(f"   symmetry order  {symmetry_group(shape).order}")
        print()


if __name__ == "__main__":
    main()
