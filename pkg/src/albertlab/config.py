"""JSON configuration: field towers, constructions, task lists.

Scalars appear in configs as strings ("2", "-3/5") or integers and are
parsed by the ground field, so rational coefficients survive the trip
through JSON exactly.  Field and algebra elements are coordinate arrays
in the documented bases.  See docs/schema.md for the full format.
"""

import json

from .associative import (CommutativeCubic, CyclicAlgebra, GroundCenter,
                          MatrixAlgebra, QuadraticCenter, UnitaryInvolution)
from .errors import ConfigError
from .fields import (Composite, CyclicCubic, Elem, PrimeFieldDesc,
                     QuadraticEtale, Rationals, tower_build)
from . import tits, isotopy

SCHEMA_VERSION = 1

KNOWN_TASKS = ("axioms", "div_falsify", "nilpotent_search", "norm_zero",
               "isotope", "iso_verify", "galois_ext", "dump_forms")


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as e:
        raise ConfigError("cannot read config: %s" % e)
    except json.JSONDecodeError as e:
        raise ConfigError("config is not valid JSON: %s" % e)
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    version = cfg.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError("unsupported schema_version %r" % (version,))
    for t in cfg.get("tasks", []):
        if not isinstance(t, dict) or "task" not in t:
            raise ConfigError("each task needs a 'task' field")
        if t["task"] not in KNOWN_TASKS:
            raise ConfigError("unknown task %r" % (t["task"],))
    if "construction" not in cfg:
        raise ConfigError("config needs a 'construction' section")
    return cfg


# ---------------------------------------------------------------------------
# descriptors

def _base_desc(node):
    if node in ("Q", "rationals", None):
        return Rationals()
    if isinstance(node, dict) and "p" in node:
        return PrimeFieldDesc(int(node["p"]))
    raise ConfigError("bad base field %r (use \"Q\" or {\"p\": prime})"
                      % (node,))


def tower_desc(node):
    if node is None:
        return None
    if not isinstance(node, dict) or "kind" not in node:
        raise ConfigError("tower needs a 'kind'")
    base = _base_desc(node.get("base"))
    kind = node["kind"]
    if kind == "quadratic":
        return QuadraticEtale(base=base, d=node.get("d"),
                              split=bool(node.get("split", False)))
    if kind == "cubic":
        return CyclicCubic(base=base, f=tuple(node["f"]),
                           rho=tuple(node["rho"]))
    if kind == "composite":
        return Composite(
            L=CyclicCubic(base=base, f=tuple(node["f"]),
                          rho=tuple(node["rho"])),
            K=QuadraticEtale(base=base, d=node.get("d"),
                             split=bool(node.get("split", False))))
    raise ConfigError("unknown tower kind %r" % (kind,))


# ---------------------------------------------------------------------------
# building

class BuildContext:
    """The tower, coefficient algebra and structure built from a config."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.tower = None
        desc = tower_desc(cfg.get("tower"))
        if desc is not None:
            self.tower = tower_build(desc)
        self.j = self._construction(cfg["construction"])

    # -- pieces ------------------------------------------------------------

    def _ground(self):
        if self.tower is not None:
            return self.tower.ground
        node = self.cfg.get("base")
        from .fields import ground_field_of
        return ground_field_of(_base_desc(node))

    def _construction(self, node):
        ctype = node.get("type")
        if ctype == "first_tits":
            return self._first(node)
        if ctype == "second_tits":
            return self._second(node)
        if ctype == "isotope_of":
            base = self._construction(node["base"])
            v = self._carrier_point(base, node["v"])
            return isotopy.isotope(base, v)
        raise ConfigError("unknown construction type %r" % (ctype,))

    def _first(self, node):
        g = self._ground()
        alg_node = node.get("algebra", {"kind": "matrix"})
        kind = alg_node.get("kind")
        if kind == "matrix":
            d_alg = MatrixAlgebra(GroundCenter(g))
        elif kind == "cyclic":
            if self.tower is None or self.tower.L is None:
                raise ConfigError("cyclic algebra needs a cubic tower")
            d_alg = CyclicAlgebra(self.tower, g.parse(alg_node["a"]))
        elif kind == "cubic_etale":
            if self.tower is None or self.tower.L is None:
                raise ConfigError("cubic etale algebra needs a cubic tower")
            d_alg = CommutativeCubic.over_L(self.tower)
        else:
            raise ConfigError("unknown first-construction algebra %r"
                              % (kind,))
        lam = g.parse(node["lambda"])
        return tits.first_tits(d_alg, lam)

    def _second(self, node):
        if self.tower is None or self.tower.K is None:
            raise ConfigError("second construction needs a tower with K")
        alg_node = node.get("algebra", {"kind": "lk"})
        kind = alg_node.get("kind")
        if kind == "lk":
            if self.tower.LK is None:
                raise ConfigError("algebra 'lk' needs a composite tower")
            b_alg = CommutativeCubic.over_LK(self.tower)
        elif kind == "matrix":
            b_alg = MatrixAlgebra(QuadraticCenter(self.tower))
        else:
            raise ConfigError("unknown second-construction algebra %r"
                              % (kind,))
        sigma = UnitaryInvolution(b_alg)
        u_node = node.get("u", "unit")
        if u_node == "unit":
            u = b_alg.unit()
        else:
            u = b_alg.from_k_coords(self._scalars(u_node, b_alg.k_dim))
        mu = Elem(self.tower.K, self._scalars(node["mu"], 2))
        twist = node.get("sigma_twist")
        if twist is not None:
            sigma = sigma.twisted(
                b_alg.from_k_coords(self._scalars(twist, b_alg.k_dim)))
        return tits.second_tits(b_alg, sigma, u, mu)

    # -- element parsing -----------------------------------------------------

    def _scalars(self, node, expect):
        g = self._ground()
        if not isinstance(node, list) or len(node) != expect:
            raise ConfigError("expected %d coordinates, got %r"
                              % (expect, node))
        return [g.parse(c) for c in node]

    def _carrier_point(self, j, node):
        return tuple(self._scalars(node, j.dim))

    def carrier_point(self, node):
        return self._carrier_point(self.j, node)

    def algebra_element(self, node):
        """Element of the coefficient algebra D or B, by k-coordinates."""
        alg = self.j.meta.get("algebra")
        if alg is None:
            raise ConfigError("construction has no coefficient algebra")
        return alg.from_k_coords(self._scalars(node, alg.k_dim))
