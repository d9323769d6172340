"""Up(P7) validates the Jankov formulas of F3 and D3, yet P7 has width 3."""

from heyting.catalog import named
from heyting.classifiers import is_cascade
from heyting.duality import jankov_valid
from heyting.poset import width


def main():
    P7 = named("P7")
    print(P7)
    for t in ("F3", "D3"):
        v = jankov_valid(P7, named(t))
        print(f"J({t}) valid in Up(P7): {v.valid}  ({v.nodes} search nodes)")
    print("width(P7) =", width(P7))
    r = is_cascade(P7)
    print("cascade:", r.verdict, r.to_json()["witnesses"].get("principal-upsets"))


if __name__ == "__main__":
    main()
