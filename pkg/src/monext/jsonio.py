"""JSON encodings of every structure the CLI reads or writes.

Monoids may appear inline as {"size", "identity", "table"} or as the name
of a built-in monoid (see ``catalog.named_monoid``).
"""

from __future__ import annotations

import json
from typing import Any

from .biset import Biset, LQArrow
from .catalog import named_monoid
from .correspondence import LaxMonoidalData, MonoidalNatTrans
from .errors import ShapeError
from .monoid import (
    LEFT,
    Congruence,
    ExactSequence,
    FiniteMonoid,
    MonoidHom,
    validate_monoid,
)
from .schreier import SchreierData
from .weakly_schreier import WSData


def _rows(t) -> list[list[int]]:
    return [list(r) for r in t]


def monoid_to_json(m: FiniteMonoid) -> dict:
    out = {"size": m.size, "identity": m.identity, "table": _rows(m.table)}
    if m.name:
        out["name"] = m.name
    return out


def monoid_from_json(obj: Any) -> FiniteMonoid:
    if isinstance(obj, str):
        return named_monoid(obj)
    if not isinstance(obj, dict) or not {"size", "identity", "table"} <= obj.keys():
        raise ShapeError("a monoid needs size, identity and table")
    return validate_monoid(obj["size"], obj["identity"], obj["table"], name=obj.get("name"))


def hom_to_json(f: MonoidHom) -> dict:
    return {"dom": monoid_to_json(f.dom), "cod": monoid_to_json(f.cod), "map": list(f.map)}


def hom_from_json(obj: dict, dom: FiniteMonoid | None = None,
                  cod: FiniteMonoid | None = None) -> MonoidHom:
    d = dom if dom is not None else monoid_from_json(obj["dom"])
    c = cod if cod is not None else monoid_from_json(obj["cod"])
    return MonoidHom(d, c, obj["map"])


def congruence_to_json(c: Congruence) -> dict:
    return {"mode": c.mode, "classes": list(c.classes)}


def congruence_from_json(obj: dict, carrier: FiniteMonoid) -> Congruence:
    return Congruence(carrier, obj["classes"], obj.get("mode", LEFT))


def sequence_to_json(s: ExactSequence) -> dict:
    return {"N": monoid_to_json(s.N), "G": monoid_to_json(s.G), "H": monoid_to_json(s.H),
            "k": list(s.k.map), "e": list(s.e.map)}


def sequence_from_json(obj: dict) -> ExactSequence:
    N, G, H = (monoid_from_json(obj[x]) for x in ("N", "G", "H"))
    k, e = obj["k"], obj["e"]
    k = k["map"] if isinstance(k, dict) else k
    e = e["map"] if isinstance(e, dict) else e
    return ExactSequence(MonoidHom(N, G, k), MonoidHom(G, H, e))


def biset_to_json(b: Biset) -> dict:
    return {"left": monoid_to_json(b.left), "right": monoid_to_json(b.right),
            "carrier": b.carrier, "lact": _rows(b.lact), "ract": _rows(b.ract)}


def biset_from_json(obj: dict, left: FiniteMonoid | None = None,
                    right: FiniteMonoid | None = None) -> Biset:
    lm = left if left is not None else monoid_from_json(obj["left"])
    rm = right if right is not None else monoid_from_json(obj["right"])
    return Biset(lm, rm, obj["carrier"], obj["lact"], obj["ract"])


def lq_arrow_to_json(a: LQArrow) -> dict:
    return {"left": monoid_to_json(a.left), "right": monoid_to_json(a.right),
            "cong": congruence_to_json(a.cong), "f": list(a.f)}


def lq_arrow_from_json(obj: dict) -> LQArrow:
    lm, rm = monoid_from_json(obj["left"]), monoid_from_json(obj["right"])
    return LQArrow(lm, rm, congruence_from_json(obj["cong"], lm), obj["f"])


def lax_data_to_json(L: LaxMonoidalData) -> dict:
    return {"N": monoid_to_json(L.N), "H": monoid_to_json(L.H),
            "fibers": [{"carrier": d.carrier, "lact": _rows(d.lact), "ract": _rows(d.ract)}
                       for d in L.fibers],
            "unit_iso": list(L.unit_iso),
            "gamma": [[_rows(g) for g in row] for row in L.gamma]}


def lax_data_from_json(obj: dict) -> LaxMonoidalData:
    N, H = monoid_from_json(obj["N"]), monoid_from_json(obj["H"])
    fibers = [biset_from_json(f, N, N) for f in obj["fibers"]]
    unit = obj.get("unit_iso", list(range(N.size)))
    return LaxMonoidalData(N, H, fibers, unit, obj["gamma"])


def nat_trans_to_json(t: MonoidalNatTrans) -> dict:
    return {"dom": lax_data_to_json(t.dom), "cod": lax_data_to_json(t.cod),
            "components": [list(c) for c in t.components]}


def nat_trans_from_json(obj: dict) -> MonoidalNatTrans:
    return MonoidalNatTrans(lax_data_from_json(obj["dom"]), lax_data_from_json(obj["cod"]),
                            obj["components"])


def schreier_to_json(d: SchreierData) -> dict:
    return {"N": monoid_to_json(d.N), "H": monoid_to_json(d.H),
            "phi": _rows(d.phi), "chi": _rows(d.chi)}


def schreier_from_json(obj: dict) -> SchreierData:
    return SchreierData(monoid_from_json(obj["N"]), monoid_from_json(obj["H"]),
                        obj["phi"], obj["chi"])


def ws_to_json(d: WSData) -> dict:
    return {"N": monoid_to_json(d.N), "H": monoid_to_json(d.H),
            "cong": [list(c.classes) for c in d.cong],
            "phi": _rows(d.phi), "chi": _rows(d.chi)}


def ws_from_json(obj: dict) -> WSData:
    N, H = monoid_from_json(obj["N"]), monoid_from_json(obj["H"])
    return WSData(N, H, [Congruence(N, c, LEFT) for c in obj["cong"]], obj["phi"], obj["chi"])


def morphism_to_json(psi) -> dict:
    return {"psi": list(psi)}


def dumps(obj: Any, pretty: bool = True) -> str:
    """Deterministic JSON text."""
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def loads(text: str) -> Any:
    return json.loads(text)
