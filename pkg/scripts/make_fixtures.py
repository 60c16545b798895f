"""Write the bundled fixture files (curves, markings, sequences)."""
import numpy as np

from amcone.experiments import random_curve
from amcone.fixtures import (curve_record, fixture_dir, marking_record, sequence_record,
                             write_json)
from amcone.markings import base_marking, marking_with_base, moves_for
from amcone.surface import S04, S05, S11
from amcone.farey import Slope


def main():
    out = fixture_dir()
    out.mkdir(parents=True, exist_ok=True)
    eng = moves_for(S05).eng
    for k, c in enumerate(eng.seeds):
        write_json(curve_record(S05, c), out / f"s05_seed{k}.json")
    rng = np.random.default_rng(11)
    while True:
        a, b = random_curve(rng, eng), random_curve(rng, eng)
        if a not in eng.seeds and eng.fill(a, b):
            break
    write_json(curve_record(S05, a), out / "s05_alpha.json")
    write_json(curve_record(S05, b), out / "s05_beta.json")
    for s in (S04, S11):
        tag = str(s).replace(",", "")
        write_json(curve_record(s, Slope(1, 0)), out / f"s{tag}_inf.json")
        write_json(curve_record(s, Slope(3, 7)), out / f"s{tag}_3_7.json")
    for s in (S04, S11, S05):
        write_json(marking_record(base_marking(s)), out / f"base_s{str(s).replace(',', '')}.json")
    write_json(marking_record(marking_with_base([a])), out / "s05_marking_alpha.json")

    base = base_marking(S05)
    c0, c1 = base.base
    n = 12
    const = [base] * n
    quad = [base.with_depths(tuple(k * k if b == c0 else 0 for b in base.base)) for k in range(1, n + 1)]
    lin2 = [base.with_depths((k, k)) for k in range(1, n + 1)]
    write_json(sequence_record(const, "lin"), out / "seq_constant.json")
    write_json(sequence_record(quad, "lin"), out / "seq_quadratic.json")
    write_json(sequence_record(lin2, "lin"), out / "seq_two_tracks.json")


if __name__ == "__main__":
    main()
