"""Self-describing JSON artifacts for constructed codes.

Field elements are stored as coefficient arrays [c_0, ..., c_{s-1}] in the
polynomial basis of the declared modulus, so an artifact can be re-verified
without rerunning the recipe."""
from __future__ import annotations

import json

from .errors import ArtifactError
from .gf import GF
from .recipes import LrcCode

FORMAT = "curvelrc-code"
VERSION = 1


def _place_to_json(F, P):
    if isinstance(P, tuple):
        return [list(F.coeffs(P[0])), list(F.coeffs(P[1]))]
    return "inf"


def code_to_dict(code: LrcCode, report=None) -> dict:
    F = code.field
    enc = lambda v: list(F.coeffs(v))
    d = {
        "format": FORMAT,
        "version": VERSION,
        "field": F.to_dict(),
        "recipe": {"name": code.recipe, "params": code.params},
        "curve": code.curve,
        "parameters": {"n": code.n, "k": code.k, "d_designed": code.d_designed, "r": code.r,
                       "delta": code.delta, "t": code.t, "m": code.m, "q": F.q,
                       "optimal": code.optimal},
        "groups": code.groups,
        "z_values": [enc(v) for v in code.z_values],
        "evaluation_places": [_place_to_json(F, P) for P in code.places],
        "generator": [[enc(v) for v in row] for row in code.generator],
        "notes": {k: v for k, v in code.notes.items() if isinstance(v, (int, str, float, list))},
    }
    if report is not None:
        d["verification"] = {k: v for k, v in report.to_dict().items() if k != "groups"}
    return d


def code_from_dict(d: dict) -> LrcCode:
    try:
        if d.get("format") != FORMAT:
            raise ArtifactError("not a code artifact")
        if d.get("version") != VERSION:
            raise ArtifactError(f"unsupported artifact version {d.get('version')}")
        F = GF.from_dict(d["field"])
        dec = F.from_coeffs
        p = d["parameters"]
        gen = [[dec(v) for v in row] for row in d["generator"]]
        places = []
        for P in d.get("evaluation_places", []):
            places.append(P if P == "inf" else (dec(P[0]), dec(P[1])))
        code = LrcCode(
            field=F, generator=gen, groups=[list(g) for g in d["groups"]], r=p["r"],
            delta=p["delta"], t=p["t"], m=p["m"], d_designed=p["d_designed"],
            z_values=[dec(v) for v in d["z_values"]], recipe=d["recipe"]["name"],
            params=d["recipe"]["params"], places=places, curve=d.get("curve", {}),
            optimal=p.get("optimal", True), notes=d.get("notes", {}),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ArtifactError(f"malformed artifact: {e}") from e
    if any(len(row) != code.n for row in gen) or len(gen) != p["k"] or code.n != p["n"]:
        raise ArtifactError("generator shape disagrees with declared parameters")
    return code


def save(code, path, report=None):
    with open(path, "w") as fh:
        json.dump(code_to_dict(code, report), fh, indent=1)


def load(path) -> LrcCode:
    with open(path) as fh:
        try:
            return code_from_dict(json.load(fh))
        except json.JSONDecodeError as e:
            raise ArtifactError(f"invalid JSON: {e}") from e
