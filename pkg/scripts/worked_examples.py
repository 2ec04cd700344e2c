"""Print the standard worked examples: expansions, convergents and best
approximations for 11/40, 7/27, 1/pi, 1/5 and 3/10."""

from fractions import Fraction

from farey_cf import (
    Modulus,
    best_via_convergents,
    brute_force_best,
    classify,
    convergents,
    enumerate_all_expansions,
    expand_max_plus_one,
    parse_real,
    select_max_plus_one,
)

F5, F25 = Modulus(5, 1), Modulus(5, 2)


def show_best(x, m, v_max):
    a = [str(r.frac) for r in brute_force_best(x, m, v_max)]
    b = [str(r.frac) for r in best_via_convergents(x, m, v_max)]
    print(f"  best (oracle):      {' '.join(a) or '(none)'}")
    print(f"  best (convergents): {' '.join(b) or '(none)'}")


def main():
    x = Fraction(11, 40)
    print(f"x = {x}, N = 5")
    allx = enumerate_all_expansions(x, F5)
    chosen = {e.text() for e in select_max_plus_one(allx)}
    for e in allx:
        print(("  * " if e.text() in chosen else "    ") + e.text())
    show_best(x, F5, 40)

    x = Fraction(7, 27)
    print(f"\nx = {x}, N = 5: {classify(x, F5).describe()}")
    for e in expand_max_plus_one(x, F5).expansions:
        cs = " ".join(f"{p}/{q}" for p, q in convergents(e, 6))
        print(f"  {e.text()}\n    convergents {cs} ...")
    show_best(x, F5, 200)

    x = parse_real("dec:0.3183098861837906715377675267450287240689:1e-40")
    (e,) = expand_max_plus_one(x, F5, max_terms=6).expansions
    print(f"\nx = 1/pi (40 digits), N = 5\n  {e.text()}")
    show_best(x, F5, 355)

    for x, m in ((Fraction(1, 5), F25), (Fraction(3, 10), F5)):
        print(f"\nx = {x}, N = {m.N}: {classify(x, m).describe()}")
        for e in expand_max_plus_one(x, m).expansions:
            print(f"  {e.text()}")
        show_best(x, m, 20 * m.N)


if __name__ == "__main__":
    main()
