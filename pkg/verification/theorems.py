"""
Nonisochronicity theorems as decision predicates.

Each hypothesis class names a family of real Hamiltonian fields
X = X_lin + sum of X_r for which some correction term is guaranteed
nonzero. theorem_applies checks the stated hypotheses only: an inapplicable
class gives "no guarantee", never "isochronous". consistency_probe draws
random members of a class and confirms that check_isochronous finds a
witness.

Classes:
    1a     even degree 2n, p[i,i] = 0 for i < r and Im p[r,r] > 0 for some 1 <= r < n-1
    1b     even degree 2n, p[i,i] = 0 for i = 1..n-1
    2      X_k + .. + X_2l with k >= 2, l <= k-1
    3      class 2 plus the blocks X_cn + .. + X_2(cn-1), c1 = 4l, cn = 4(c(n-1) - 1)
    4i     X_k + .. + X_2l + X_2l+1 + X_r + .. + X_r+n, r >= 2l+2, Im p[l,l] > 0
    4ii    X_k + .. + X_2l + X_4l-1 + X_r + .. + X_r+n, X_2l nontrivial, r >= 4l,
           Im p[2l-1,2l-1] > 0
    weak   only even-degree components
"""

import json
import logging
import random
from collections import Counter
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

from algebra.gaussrat import GaussRat
from algebra.sympoly import CoeffVar
from generation.constraints import (FieldSpec, component_p_vars, is_central,
                                    is_hamiltonian_dependent, numeric_spec, validate_assignment)
from utils.configure import get_output_file_name, get_verification_config, get_verification_config_path
from utils.dump import save_result
from utils.load_field import format_field
from verification.isochrony import NONISOCHRONOUS, check_isochronous

logger = logging.getLogger(__name__)

THEOREMS_CONFIG_PATH = get_verification_config_path(
    "THEOREMS_CONFIG_PATH") or "verification/config/theorems.json"
SAMPLE_SEED = get_verification_config("SAMPLE_SEED") or 20240607
SAMPLE_COUNT = get_verification_config("SAMPLE_COUNT") or 20
MAX_DEPTH = get_verification_config("MAX_DEPTH") or 8
PROBE_REPORT_FILE = get_output_file_name("PROBE_REPORT_FILE") or "probe_report.json"

THEOREMS = ("1a", "1b", "2", "3", "4i", "4ii", "weak")

NUMERATOR_RANGE = (-5, 5)
DENOMINATOR_RANGE = (1, 4)
ACTIVE_PROBABILITY = 0.75
NONZERO_PROBABILITY = 0.8
MAX_REDRAWS = 100

FOURII_READING_NOTE = ("the displayed form is read as X_lin + X_k + .. + X_2l + X_4l-1 + "
                       "X_r + .. + X_r+n (a '+' is missing after X_lin in the printed statement)")


@dataclass
class TheoremCondition:
    """
    A hypothesis class with its parameters.

    Unset parameters are inferred from the field when checking and take
    small defaults when sampling.

    Attributes:
        theorem: One of THEOREMS
        k: Lowest component degree of the window X_k .. X_2l
        l: Half the top degree of the window
        m: Number of c_n blocks (theorem 3)
        n: Half the field degree (theorem 1) or the length of the tail X_r .. X_r+n (theorem 4)
        r: Index of the first nonzero central coefficient (1a) or the tail start (4i/4ii)
        degree: Field degree for the weak corollary
    """
    theorem: str
    k: Optional[int] = None
    l: Optional[int] = None
    m: Optional[int] = None
    n: Optional[int] = None
    r: Optional[int] = None
    degree: Optional[int] = None

    def __post_init__(self):
        if self.theorem not in THEOREMS:
            raise ValueError(f"unknown theorem {self.theorem!r}; expected one of {', '.join(THEOREMS)}")
        if self.k is not None and self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")
        if self.l is not None and self.l < 1:
            raise ValueError(f"l must be at least 1, got {self.l}")
        if self.k is not None and self.l is not None and self.l > self.k - 1:
            raise ValueError(f"l = {self.l} exceeds k - 1 = {self.k - 1}")
        if self.m is not None and self.m < 1:
            raise ValueError(f"m must be at least 1, got {self.m}")
        if self.theorem == "1a" and self.r is not None and self.n is not None and not 1 <= self.r < self.n - 1:
            raise ValueError(f"theorem 1a needs 1 <= r < n-1, got r = {self.r}, n = {self.n}")

    @property
    def label(self) -> str:
        params = ", ".join(f"{name}={value}" for name, value in asdict(self).items()
                           if name != "theorem" and value is not None)
        return f"theorem {self.theorem}" + (f" ({params})" if params else "")

    @property
    def c(self) -> List[int]:
        if self.theorem != "3" or self.l is None or self.m is None:
            return []
        return c_sequence(self.l, self.m)


def c_sequence(l: int, m: int) -> List[int]:
    """c1 = 4l, cn = 4(c(n-1) - 1), n = 1..m."""
    if l < 1 or m < 0:
        raise ValueError(f"c_sequence needs l >= 1 and m >= 0, got l = {l}, m = {m}")
    sequence: List[int] = []
    for _ in range(m):
        sequence.append(4 * l if not sequence else 4 * (sequence[-1] - 1))
    return sequence


def load_conditions(path: Optional[str] = None) -> List[TheoremCondition]:
    """Read the hypothesis-class catalog used by the probes."""
    with open(path or THEOREMS_CONFIG_PATH, 'r', encoding='utf-8') as f:
        catalog = json.load(f)
    return [TheoremCondition(**entry) for entry in catalog["conditions"]]


# --- predicates -------------------------------------------------------------


def central_value(spec: FieldSpec, i: int) -> Optional[GaussRat]:
    """p[i,i] of the component X_2i+1; zero when absent, None when symbolic."""
    r = 2 * i + 1
    if r not in spec.components:
        return GaussRat()
    if spec.components[r] is None:
        return None
    return spec.value(CoeffVar(i, i))


def _window(k: int, l: int) -> Set[int]:
    return set(range(k, 2 * l + 1))


def _blocks(l: int, m: int) -> Set[int]:
    degrees: Set[int] = set()
    for c in c_sequence(l, m):
        degrees.update(range(c, 2 * (c - 1) + 1))
    return degrees


def _blocks_needed(l: int, top: int) -> int:
    """Smallest m whose blocks reach degree `top`."""
    m = 1
    while 2 * (c_sequence(l, m)[-1] - 1) < top:
        m += 1
    return m


def _check_theorem1(spec: FieldSpec, cond: TheoremCondition, support: List[int]) -> Tuple[bool, str]:
    top = max(support)
    if top % 2:
        return False, f"no guarantee: the field has odd degree {top}"
    n = top // 2
    if cond.n is not None and cond.n != n:
        return False, f"no guarantee: the field has degree {top}, not 2n = {2 * cond.n}"
    centrals: List[GaussRat] = []
    for i in range(1, n):
        value = central_value(spec, i)
        if value is None:
            return False, f"no guarantee: p[{i},{i}] is symbolic"
        centrals.append(value)

    if cond.theorem == "1b":
        nonzero = [i for i, value in enumerate(centrals, start=1) if value]
        if nonzero:
            return False, f"no guarantee: p[{nonzero[0]},{nonzero[0]}] = {centrals[nonzero[0] - 1]} is nonzero"
        return True, f"degree {top} with p[i,i] = 0 for i = 1..{n - 1}"

    # first nonzero central coefficient decides
    first = next((i for i, value in enumerate(centrals, start=1) if value), None)
    if first is None:
        return False, "no guarantee: every p[i,i] vanishes (see theorem 1b)"
    value = centrals[first - 1]
    if cond.r is not None and cond.r != first:
        return False, f"no guarantee: the first nonzero central coefficient is p[{first},{first}], not r = {cond.r}"
    if first >= n - 1:
        return False, f"no guarantee: r = {first} is not below n-1 = {n - 1}"
    if value.im <= 0:
        return False, f"no guarantee: Im p[{first},{first}] = {value.im} is not positive"
    return True, f"degree {top}, p[i,i] = 0 for i < {first} and Im p[{first},{first}] = {value.im} > 0"


def _check_theorem2(support: List[int], cond: TheoremCondition) -> Tuple[bool, str]:
    k = cond.k if cond.k is not None else min(support)
    l = cond.l if cond.l is not None else k - 1
    if k < 2 or l < 1 or l > k - 1:
        return False, f"no guarantee: k = {k}, l = {l} violate k >= 2, 1 <= l <= k-1"
    outside = sorted(set(support) - _window(k, l))
    if outside:
        return False, f"no guarantee: components {outside} fall outside X_{k} .. X_{2 * l}"
    return True, f"support {support} within X_{k} .. X_{2 * l}, l = {l} <= k-1 = {k - 1}"


def _check_theorem3(support: List[int], cond: TheoremCondition) -> Tuple[bool, str]:
    k = cond.k if cond.k is not None else min(support)
    l = cond.l if cond.l is not None else k - 1
    if k < 2 or l < 1 or l > k - 1:
        return False, f"no guarantee: k = {k}, l = {l} violate k >= 2, 1 <= l <= k-1"
    m = cond.m if cond.m is not None else _blocks_needed(l, max(support))
    c = c_sequence(l, m)
    if any(b <= a for a, b in zip(c, c[1:])):
        return False, f"no guarantee: c = {c} is not strictly increasing"
    allowed = _window(k, l) | _blocks(l, m)
    outside = sorted(set(support) - allowed)
    if outside:
        return False, f"no guarantee: components {outside} fall outside X_{k} .. X_{2 * l} and the blocks c = {c}"
    blocks = ", ".join(f"X_{cn} .. X_{2 * (cn - 1)}" for cn in c)
    return True, f"support {support} within X_{k} .. X_{2 * l} and {blocks}"


def _check_theorem4(spec: FieldSpec, cond: TheoremCondition, support: List[int]) -> Tuple[bool, str]:
    k = cond.k if cond.k is not None else min(support)
    l = cond.l if cond.l is not None else k - 1
    if k < 2 or l < 1 or l > k - 1:
        return False, f"no guarantee: k = {k}, l = {l} violate k >= 2, 1 <= l <= k-1"
    if cond.theorem == "4i":
        special, tail_bound, central_index = 2 * l + 1, 2 * l + 2, l
    else:
        special, tail_bound, central_index = 4 * l - 1, 4 * l, 2 * l - 1
    rest = sorted(set(support) - _window(k, l) - {special})
    r = cond.r if cond.r is not None else (min(rest) if rest else tail_bound)
    if r < tail_bound:
        return False, f"no guarantee: tail start r = {r} is below {tail_bound}"
    below = [d for d in rest if d < r]
    if below:
        return False, f"no guarantee: components {below} lie between X_{special} and the tail X_{r}"
    if cond.n is not None and rest and max(rest) > r + cond.n:
        return False, f"no guarantee: components beyond X_{r + cond.n}"
    if cond.theorem == "4ii" and 2 * l not in support:
        return False, f"no guarantee: X_{2 * l} is trivial"
    value = central_value(spec, central_index)
    if value is None:
        return False, f"no guarantee: p[{central_index},{central_index}] is symbolic"
    if value.im <= 0:
        return False, f"no guarantee: Im p[{central_index},{central_index}] = {value.im} is not positive"
    explanation = (f"X_{k} .. X_{2 * l} + X_{special} + tail from X_{r}, "
                   f"Im p[{central_index},{central_index}] = {value.im} > 0")
    if cond.theorem == "4ii":
        explanation += f"; {FOURII_READING_NOTE}"
    return True, explanation


def theorem_applies(spec: FieldSpec, cond: TheoremCondition) -> Tuple[bool, str]:
    """
    Check the hypotheses of a class against a field.

    Args:
        spec: Field specification; central coefficients must be numeric where a
            class constrains them
        cond: Hypothesis class

    Returns:
        (whether nonisochronicity is guaranteed, explanation)
    """
    if not spec.hamiltonian:
        return False, "no guarantee: the classes concern real Hamiltonian fields"
    if not spec.normalized:
        spec = validate_assignment(spec)
    support = spec.support()
    if not support:
        return False, "no guarantee: the perturbation is zero (trivially linearizable)"

    if cond.theorem in ("1a", "1b"):
        return _check_theorem1(spec, cond, support)
    if cond.theorem == "2":
        return _check_theorem2(support, cond)
    if cond.theorem == "3":
        return _check_theorem3(support, cond)
    if cond.theorem in ("4i", "4ii"):
        return _check_theorem4(spec, cond, support)
    odd = [d for d in support if d % 2]
    if odd:
        return False, f"no guarantee: odd components {odd} present"
    if cond.degree is not None and max(support) > cond.degree:
        return False, f"no guarantee: degree {max(support)} exceeds {cond.degree}"
    return True, f"only even components {support}"


# --- sampling ---------------------------------------------------------------


def _random_rational(rng: random.Random, positive: bool = False) -> Fraction:
    low, high = NUMERATOR_RANGE
    numerator = rng.randint(1, high) if positive else rng.randint(low, high)
    return Fraction(numerator, rng.randint(*DENOMINATOR_RANGE))


def _random_value(rng: random.Random, var: CoeffVar) -> GaussRat:
    if rng.random() >= NONZERO_PROBABILITY:
        return GaussRat()
    while True:
        if is_central(var):
            value = GaussRat(0, _random_rational(rng))
        else:
            value = GaussRat(_random_rational(rng), _random_rational(rng))
        if value:
            return value


def _class_layout(cond: TheoremCondition) -> Tuple[List[int], Set[int], Dict[int, str]]:
    """
    Component degrees, forced-nontrivial degrees and central overrides of a class.

    Central overrides map i to "zero" or "positive" (Im p[i,i] > 0).
    """
    k = cond.k if cond.k is not None else 2
    l = cond.l if cond.l is not None else k - 1
    centrals: Dict[int, str] = {}
    if cond.theorem in ("1a", "1b"):
        n = cond.n if cond.n is not None else (3 if cond.theorem == "1a" else 2)
        degrees = list(range(2, 2 * n + 1))
        if cond.theorem == "1b":
            centrals = {i: "zero" for i in range(1, n)}
        else:
            r = cond.r if cond.r is not None else 1
            if not 1 <= r < n - 1:
                raise ValueError(f"theorem 1a needs 1 <= r < n-1, got r = {r}, n = {n}")
            centrals = {i: "zero" for i in range(1, r)}
            centrals[r] = "positive"
        return degrees, {2, 2 * n}, centrals
    if cond.theorem == "2":
        return sorted(_window(k, l)), {k}, centrals
    if cond.theorem == "3":
        m = cond.m if cond.m is not None else 1
        return sorted(_window(k, l) | _blocks(l, m)), {k}, centrals
    if cond.theorem in ("4i", "4ii"):
        if cond.theorem == "4i":
            special, tail_start, central_index = 2 * l + 1, 2 * l + 2, l
        else:
            special, tail_start, central_index = 4 * l - 1, 4 * l, 2 * l - 1
        r = cond.r if cond.r is not None else tail_start
        n = cond.n if cond.n is not None else 1
        degrees = sorted(_window(k, l) | {special} | set(range(r, r + n + 1)))
        forced = {2 * l} if cond.theorem == "4ii" else ({k} if k <= 2 * l else set())
        return degrees, forced, {central_index: "positive"}
    degree = cond.degree if cond.degree is not None else 4
    return list(range(2, degree + 1, 2)), {2}, centrals


def random_spec(degrees: Iterable[int], rng: random.Random, forced: Iterable[int] = (),
                centrals: Optional[Dict[int, str]] = None) -> FieldSpec:
    """
    Draw a random numeric Hamiltonian field over the given components.

    Components are active with probability ACTIVE_PROBABILITY, each
    independent coefficient nonzero with probability NONZERO_PROBABILITY.

    Args:
        degrees: Component degrees
        rng: Seeded generator
        forced: Degrees that always carry a nonzero coefficient
        centrals: i -> "zero" or "positive" overrides of p[i,i]

    Returns:
        Normalized numeric spec declaring every degree
    """
    degrees = sorted(set(degrees))
    forced = set(forced)
    centrals = centrals or {}
    values: Dict[CoeffVar, GaussRat] = {}
    for r in degrees:
        active = r in forced or rng.random() < ACTIVE_PROBABILITY
        independent = [var for var in component_p_vars(r) if not is_hamiltonian_dependent(var)]
        drawn = {var: _random_value(rng, var) if active else GaussRat() for var in independent}
        for var in independent:
            if is_central(var) and var.a in centrals:
                drawn[var] = (GaussRat(0, _random_rational(rng, positive=True))
                              if centrals[var.a] == "positive" else GaussRat())
        if r in forced and not any(drawn.values()):
            drawn[CoeffVar(-1, r)] = GaussRat(_random_rational(rng, positive=True), _random_rational(rng))
        values.update({var: value for var, value in drawn.items() if value})
    return numeric_spec(values, hamiltonian=True, degrees=degrees)


def sample_spec(cond: TheoremCondition, rng: random.Random) -> FieldSpec:
    """Draw a random numeric Hamiltonian field of a hypothesis class; its forced components are nontrivial."""
    degrees, forced, centrals = _class_layout(cond)
    return random_spec(degrees, rng, forced, centrals)


@dataclass
class ProbeReport:
    """
    Attributes:
        condition: Label of the probed class
        samples: Specs checked
        witness_depths: Witness depth -> number of samples
        undetermined: Field texts of samples exhausting max_depth
        inapplicable: Field texts of samples the predicate rejected
        excluded_trivial: Zero samples redrawn by the nontriviality filter
    """
    condition: str
    samples: int
    max_depth: int
    seed: int
    witness_depths: Dict[int, int] = field(default_factory=dict)
    undetermined: List[str] = field(default_factory=list)
    inapplicable: List[str] = field(default_factory=list)
    excluded_trivial: int = 0

    @property
    def passed(self) -> bool:
        return not self.undetermined and not self.inapplicable

    def to_dict(self) -> dict:
        result = asdict(self)
        result["witness_depths"] = {str(depth): count for depth, count in sorted(self.witness_depths.items())}
        result["passed"] = self.passed
        return result


def consistency_probe(cond: TheoremCondition, samples: Optional[int] = None,
                      max_depth: Optional[int] = None, seed: Optional[int] = None) -> ProbeReport:
    """
    Cross-check a hypothesis class against check_isochronous on random members.

    Samples exhausting max_depth are reported, not raised: the guaranteed
    witness may lie beyond the bound.
    """
    samples = SAMPLE_COUNT if samples is None else samples
    max_depth = MAX_DEPTH if max_depth is None else max_depth
    seed = SAMPLE_SEED if seed is None else seed
    rng = random.Random(seed)
    report = ProbeReport(condition=cond.label, samples=samples, max_depth=max_depth, seed=seed)
    depths: Counter = Counter()
    for _ in range(samples):
        spec = sample_spec(cond, rng)
        redraws = 0
        while spec.is_trivial() and redraws < MAX_REDRAWS:
            report.excluded_trivial += 1
            redraws += 1
            spec = sample_spec(cond, rng)
        applies, explanation = theorem_applies(spec, cond)
        if not applies:
            logger.warning("sample outside %s: %s", cond.label, explanation)
            report.inapplicable.append(format_field(spec))
            continue
        verdict = check_isochronous(spec, max_depth)
        if verdict.kind == NONISOCHRONOUS:
            depths[verdict.depth] += 1
        else:
            logger.warning("%s sample undetermined up to depth %d", cond.label, max_depth)
            report.undetermined.append(format_field(spec))
    report.witness_depths = dict(sorted(depths.items()))
    return report


if __name__ == '__main__':
    print("=" * 60)
    print("Consistency probes of the nonisochronicity classes")
    print("=" * 60)
    reports = []
    for condition in load_conditions():
        probe = consistency_probe(condition)
        reports.append(probe.to_dict())
        status = "ok" if probe.passed else "FLAGGED"
        print(f"{condition.label}: {status}, witness depths {probe.witness_depths}")
    save_result(reports, PROBE_REPORT_FILE, "probe report")
