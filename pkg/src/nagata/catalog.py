"""Registry of groups with predicted dimension values and comparison rules.

Infinite predictions are the tagged string "infinity", never a sentinel
integer, so comparison rules can branch on them explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

INFINITY = "infinity"

PASS, FAIL, EVIDENCE_ONLY = "PASS", "FAIL", "EVIDENCE-ONLY"


class IncomparableError(ValueError):
    pass


@dataclass(frozen=True)
class Prediction:
    value: object          # int or INFINITY
    citation: str

    def __post_init__(self):
        if not self.citation:
            raise ValueError("every prediction carries a nonempty citation")
        if not (self.value == INFINITY or isinstance(self.value, int)):
            raise ValueError(f"prediction value must be int or {INFINITY!r}")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    model: str | None                    # key into discrete.BUILTIN_MODELS
    lie_algebra: str | None              # key into lie_algebra.BUILTIN_ALGEBRAS
    predictions: dict                    # quantity -> Prediction
    decomposition_notes: str = ""

    def predicted(self, quantity: str):
        return self.predictions[quantity].value


def builtin_catalog() -> list[CatalogEntry]:
    abelian_cite = "abelian base case: asymptotic AN dimension of Z^n is n"
    polycyclic_cite = ("polycyclic lattice with a word metric: asymptotic AN "
                       "dimension equals the Hirsch length")
    solvable_cite = "connected solvable Lie group: AN dimension equals the topological dimension"
    wreath_cite = ("Brodskiy-Dydak-Lang: Z_2 wr Z^2 has infinite AN dimension "
                   "though its asymptotic dimension is two")
    semisimple_cite = ("semisimple case: asymptotic AN dimension equals "
                       "dim(G/T) for a maximal compact T")
    entries = [
        CatalogEntry("Z", "Z", None, {
            "asdim_AN": Prediction(1, abelian_cite),
            "hirsch": Prediction(1, polycyclic_cite),
        }),
        CatalogEntry("Z^2", "Z^2", "abelian2", {
            "asdim_AN": Prediction(2, abelian_cite),
            "hirsch": Prediction(2, polycyclic_cite),
        }),
        CatalogEntry("Z^3", "Z^3", "abelian3", {
            "asdim_AN": Prediction(3, abelian_cite),
            "hirsch": Prediction(3, polycyclic_cite),
        }),
        CatalogEntry("heisenberg", "heisenberg", "heis3", {
            "asdim_AN": Prediction(3, polycyclic_cite),
            "hirsch": Prediction(3, "abelianization Z^2 plus central Z"),
            "distortion_depth": Prediction(2, "central layer sits at depth 2 "
                                              "of the lower central series"),
        }),
        CatalogEntry("filiform4-lattice", None, "filiform4", {
            "asdim_AN": Prediction(4, polycyclic_cite),
            "hirsch": Prediction(4, "ranks 2, 1, 1 of the series quotients"),
        }, decomposition_notes="lattice of the 4-dim filiform group; no exact "
                               "integer form shipped, algebra only"),
        CatalogEntry("sol", "sol", None, {
            "asdim_AN": Prediction(3, solvable_cite),
            "hirsch": Prediction(3, "fiber Z^2 plus base Z"),
        }, decomposition_notes="Z^2 extension by an Anosov matrix; fiber is "
                               "the exponential radical"),
        CatalogEntry("lamplighter-Z2-Z2", "lamplighter-Z2-Z2", None, {
            "asdim_AN": Prediction(INFINITY, wreath_cite),
            "asdim": Prediction(2, wreath_cite),
        }),
        CatalogEntry("sl2", None, "sl2", {
            "asdim_AN": Prediction(2, semisimple_cite),
        }, decomposition_notes="Iwasawa A(dim 1) N(dim 1) K=SO(2); maximal "
                               "compact T = SO(2), dim(G/T) = 2"),
        CatalogEntry("so3", None, "so3", {
            "asdim_AN": Prediction(0, semisimple_cite),
        }, decomposition_notes="compact; maximal compact is the whole group, "
                               "dim(G/T) = 0"),
    ]
    return entries


def lookup(name: str) -> CatalogEntry:
    for e in builtin_catalog():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")


@dataclass
class Verdict:
    verdict: str           # PASS | FAIL | EVIDENCE-ONLY
    rule: str
    details: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "details": self.details}


def compare_to_prediction(record: dict, entry: CatalogEntry) -> Verdict:
    """Apply the comparison rule admitted by the record's experiment kind.

    Heuristic control curves and all lower-bound-flavored claims are
    mandatory EVIDENCE-ONLY; cover certificates and distortion exponents
    admit PASS/FAIL.
    """
    kind = record.get("experiment")
    out = record.get("outputs", {})
    if kind == "cover":
        predicted = entry.predicted("asdim_AN")
        if predicted == INFINITY:
            raise IncomparableError(
                "cover certificates only bound finite predictions")
        families = out["n_families"]
        ok = (families == predicted + 1 and out["all_scales_passed"]
              and out["linear_fit_passed"])
        return Verdict(PASS if ok else FAIL,
                       "cover families == predicted asdim_AN + 1, all scales "
                       "verified, linear control fit",
                       {"families": families, "predicted": predicted,
                        "all_scales_passed": out["all_scales_passed"],
                        "linear_fit_passed": out["linear_fit_passed"]})
    if kind == "distortion":
        depth = entry.predicted("distortion_depth")
        alpha = out["fit"]["params"]["alpha"]
        ok = abs(alpha - 1.0 / depth) <= 0.1
        return Verdict(PASS if ok else FAIL,
                       "power-fit exponent within 0.1 of 1/r for the series depth r",
                       {"alpha": alpha, "expected": 1.0 / depth})
    if kind == "control-curve":
        details = {"samples": out["samples"]}
        predicted = entry.predicted("asdim_AN")
        if predicted == INFINITY:
            details["note"] = ("superlinear growth of the achieved bound is "
                               "evidence toward the infinite prediction, not proof")
            if "power_fit" in out:
                details["power_exponent"] = out["power_fit"]["params"]["alpha"]
        else:
            details["note"] = ("near-linear achieved bounds are evidence toward "
                               "the finite prediction, not proof")
            if "linear_fit" in out:
                details["linear_residual"] = out["linear_fit"]["max_rel_residual"]
        return Verdict(EVIDENCE_ONLY,
                       "heuristic curves never certify; evidence only", details)
    if kind == "lie-classify":
        predicted = entry.predicted("asdim_AN")
        got = out["predicted_asdim_AN"]
        if got == "requires catalog":
            ok = entry.decomposition_notes != "" and predicted != INFINITY
            rule = ("algebra defers to catalog decomposition data; entry "
                    "supplies dim(G/T)")
        else:
            ok = got == predicted
            rule = "classify prediction equals the catalog value"
        return Verdict(PASS if ok else FAIL, rule,
                       {"classify": got, "catalog": predicted})
    raise IncomparableError(f"no comparison rule for experiment kind {kind!r}")
