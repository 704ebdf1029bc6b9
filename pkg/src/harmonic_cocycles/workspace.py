"""The JSON workspace: one document holding a group and named objects on it.

Schema (all sections except ``group`` optional)::

    {
      "group":     {"kind": ..., "params": {...}},
      "measures":  {name: {"support": [...], "weights": [...]}
                         | {"uniform_on_generators": {"lazy": 0.0}}
                         | {"product": [factor measure, ...]}},
      "reps":      {name: {"dim": n, "field": "real"|"complex", "matrices": {label: rows}}},
      "cocycles":  {name: {"rep": rep name, "gen_values": {label: vector}}},
      "vectors":   {name: vector},
      "subgroups": {name: {"subgroup": group spec, "subgroup_generators": [...],
                           "coset_reps": [...], "reps": {...}, "cocycles": {...}}},
      "boundaries": {name: {"radius": r, "values": [[element, value], ...]}},
      "options":   {"seed": 0, "tol": 1e-10, "max_iter": 100000, "radius_cap": 20,
                    "gen_radius": 6, "ball_limit": 1000000}
    }

Elements are written either in their JSON encoding or as word strings such
as ``"s t^-2"``.  Complex scalars are ``[re, im]`` pairs.  Everything is
validated when the workspace is loaded.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .cocycle import Cocycle, from_json as cocycle_from_json
from .errors import InputError, WorkspaceError
from .groups import Group, ProductGroup, group_from_json
from .induction import FiniteIndexSubgroup
from .measure import FinMeasure, check_mu, product_measure, uniform_on_generators
from .rep import UnitaryRep, ValidationReport, decode_vector, validate_homomorphism

DEFAULT_OPTIONS = {"seed": 0, "tol": 1e-10, "max_iter": 100_000, "radius_cap": 20,
                   "gen_radius": 6, "ball_limit": 1_000_000}
SECTIONS = {"group", "measures", "reps", "cocycles", "vectors", "subgroups", "boundaries",
            "options"}


@dataclass
class SubgroupEntry:
    sub: FiniteIndexSubgroup
    reps: dict = field(default_factory=dict)
    cocycles: dict = field(default_factory=dict)
    validations: dict = field(default_factory=dict)


@dataclass
class Workspace:
    group: Group
    measures: dict
    factor_measures: dict
    reps: dict
    cocycles: dict
    vectors: dict
    subgroups: dict
    boundaries: dict
    options: dict
    digest: str
    validations: dict

    # -- lookups -----------------------------------------------------------
    def _get(self, table: dict, name: str, what: str):
        if name is None:
            if len(table) == 1:
                return next(iter(table.values()))
            raise WorkspaceError(f"name a {what}: choices are {sorted(table)}")
        try:
            return table[name]
        except KeyError:
            raise WorkspaceError(f"unknown {what} {name!r}", choices=sorted(table)) from None

    def measure(self, name=None) -> FinMeasure:
        return self._get(self.measures, name, "measure")

    def rep(self, name=None) -> UnitaryRep:
        return self._get(self.reps, name, "representation")

    def cocycle(self, name=None) -> Cocycle:
        return self._get(self.cocycles, name, "cocycle")

    def subgroup(self, name=None) -> SubgroupEntry:
        return self._get(self.subgroups, name, "subgroup")

    def boundary(self, name=None) -> dict:
        return self._get(self.boundaries, name, "boundary")

    def factor_measure_list(self, name=None) -> list:
        if name is None and len(self.factor_measures) == 1:
            return next(iter(self.factor_measures.values()))
        if name not in self.factor_measures:
            raise WorkspaceError("decomposition needs a measure given by its factors ('product')",
                                 choices=sorted(self.factor_measures))
        return self.factor_measures[name]

    def vector(self, text_or_name, dim: int):
        """A vector from a workspace name or a JSON list literal."""
        if text_or_name is None:
            return None
        if text_or_name in self.vectors:
            v = self.vectors[text_or_name]
        else:
            try:
                v = decode_vector(json.loads(text_or_name))
            except (ValueError, TypeError):
                raise WorkspaceError(f"{text_or_name!r} is neither a vector name nor a JSON list") from None
        if len(v) != dim:
            raise InputError(f"vector has length {len(v)}, expected {dim}")
        return v


def _measure(G: Group, obj, where: str):
    if not isinstance(obj, dict):
        raise WorkspaceError(f"{where}: measure must be an object")
    if "uniform_on_generators" in obj:
        opts = obj["uniform_on_generators"] or {}
        return uniform_on_generators(G, lazy=float(opts.get("lazy", 0.0))), None
    if "product" in obj:
        if not isinstance(G, ProductGroup):
            raise WorkspaceError(f"{where}: product measures need a product group")
        parts = obj["product"]
        if len(parts) != len(G.factors):
            raise WorkspaceError(f"{where}: need one measure per factor")
        factors = [_measure(f, p, f"{where}.product[{j}]")[0]
                   for j, (f, p) in enumerate(zip(G.factors, parts))]
        return product_measure(G, factors), factors
    return check_mu(FinMeasure.from_json(G, obj), G), None


def _reps(G, table, where):
    reps, validations = {}, {}
    for name, obj in (table or {}).items():
        rep = UnitaryRep.from_json(G, obj)
        report: ValidationReport = validate_homomorphism(rep)
        reps[name] = rep
        validations[f"{where}.{name}"] = report.to_json()
    return reps, validations


def _cocycles(reps, table, where):
    out, validations = {}, {}
    for name, obj in (table or {}).items():
        if not isinstance(obj, dict) or "rep" not in obj:
            raise WorkspaceError(f"{where}.{name}: cocycle needs a 'rep' reference")
        if obj["rep"] not in reps:
            raise WorkspaceError(f"{where}.{name}: unknown representation {obj['rep']!r}")
        out[name] = cocycle_from_json(reps[obj["rep"]], obj)
        validations[f"{where}.{name}"] = {"ok": True, "rep": obj["rep"]}
    return out, validations


def digest_of(doc) -> str:
    canon = json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_document(doc: dict) -> Workspace:
    """Parse and validate a workspace document."""
    if not isinstance(doc, dict) or "group" not in doc:
        raise WorkspaceError("workspace must be an object with a 'group'")
    unknown = set(doc) - SECTIONS
    if unknown:
        raise WorkspaceError("unknown workspace sections", sections=sorted(unknown))
    G = group_from_json(doc["group"])
    options = dict(DEFAULT_OPTIONS)
    options.update(doc.get("options", {}))
    bad = set(options) - set(DEFAULT_OPTIONS)
    if bad:
        raise WorkspaceError("unknown options", options=sorted(bad))
    validations = {}
    measures, factor_measures = {}, {}
    for name, obj in doc.get("measures", {}).items():
        mu, factors = _measure(G, obj, f"measures.{name}")
        measures[name] = mu
        if factors is not None:
            factor_measures[name] = factors
        validations[f"measures.{name}"] = {"ok": True, "support_size": len(mu)}
    reps, v = _reps(G, doc.get("reps"), "reps")
    validations.update(v)
    cocycles, v = _cocycles(reps, doc.get("cocycles"), "cocycles")
    validations.update(v)
    vectors = {name: decode_vector(x) for name, x in doc.get("vectors", {}).items()}
    subgroups = {}
    for name, obj in doc.get("subgroups", {}).items():
        sub = FiniteIndexSubgroup.from_json(G, obj)
        sreps, v1 = _reps(sub.subgroup, obj.get("reps"), f"subgroups.{name}.reps")
        scocs, v2 = _cocycles(sreps, obj.get("cocycles"), f"subgroups.{name}.cocycles")
        validations.update(v1)
        validations.update(v2)
        validations[f"subgroups.{name}"] = {"ok": True, "index": sub.index,
                                             "membership": sub.membership}
        subgroups[name] = SubgroupEntry(sub, sreps, scocs)
    boundaries = {}
    for name, obj in doc.get("boundaries", {}).items():
        try:
            radius = int(obj["radius"])
            raw = obj["values"]
        except (KeyError, TypeError, ValueError):
            raise WorkspaceError(f"boundaries.{name}: needs 'radius' and 'values'") from None
        items = raw.items() if isinstance(raw, dict) else raw
        values = {}
        for elem, val in items:
            values[G.element(elem)] = float(val)
        boundaries[name] = {"radius": radius, "values": values}
    return Workspace(G, measures, factor_measures, reps, cocycles, vectors, subgroups,
                     boundaries, options, digest_of(doc), validations)


def load(path: str) -> Workspace:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except FileNotFoundError:
        raise WorkspaceError(f"workspace file {path!r} not found") from None
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"workspace is not valid JSON: {exc}") from None
    return load_document(doc)
