"""
Base scenario class providing common functionality for all catalog scenarios.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from ..config.solver_config import DEFAULT_SEED, DEFAULT_STARTS, DEFAULT_TOL_ENT, DEFAULT_TOL_FACT
from ..factorizers.base import AlsConfig, FactorizationReport, Tolerances
from ..factorizers.classify import classify
from ..products.base import GeneralProduct, StateVector
from ..utils.errors import InputError

logger = logging.getLogger(__name__)

COMMON_OVERRIDES = {
    "seed": DEFAULT_SEED,
    "starts": DEFAULT_STARTS,
    "tol_fact": DEFAULT_TOL_FACT,
    "tol_ent": DEFAULT_TOL_ENT,
}


@dataclass
class Check:
    """One expected value compared against a computed one"""
    name: str
    value: Any
    expected: Any
    tolerance: Optional[float] = None

    @property
    def passed(self) -> bool:
        if self.tolerance is None:
            return self.value == self.expected
        return abs(self.value - self.expected) <= self.tolerance


@dataclass(eq=False)
class ScenarioReport:
    name: str
    params: Dict[str, Any]
    report: FactorizationReport
    checks: List[Check] = field(default_factory=list)
    extra_reports: Dict[str, FactorizationReport] = field(default_factory=dict)
    anchor: str = ""

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_checks(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]


@dataclass(frozen=True)
class ScenarioInfo:
    name: str
    product: str
    expected_verdict: str
    anchor: str
    defaults: Dict[str, Any]


class BaseScenario(ABC):
    """
    Named worked example with its own oracle for the expected values.

    Subclasses build the product and target and compare the classification
    against independently derived numbers; ``run`` merges overrides,
    classifies and collects the checks.
    """
    name: str = "scenario"
    anchor: str = ""
    defaults: Dict[str, Any] = {}

    @abstractmethod
    def build(self, params: Dict[str, Any]) -> Tuple[GeneralProduct, StateVector]:
        """
        Product and target for the given parameters.
        Must be implemented by child classes.
        """
        pass

    @abstractmethod
    def evaluate(
        self,
        params: Dict[str, Any],
        report: FactorizationReport,
        cfg: AlsConfig,
        tolerances: Tolerances,
    ) -> Tuple[List[Check], Dict[str, FactorizationReport]]:
        """
        Oracle checks on the classification (plus any extra reports).
        Must be implemented by child classes.
        """
        pass

    def expected_verdict(self, params: Dict[str, Any]) -> str:
        return "FACTORIZABLE"

    def product_spec(self, params: Dict[str, Any]) -> str:
        product, _ = self.build(params)
        return product.describe()

    def resolve(self, overrides: Dict[str, Any] = None) -> Dict[str, Any]:
        """Defaults merged with overrides; unknown keys are rejected"""
        params = dict(COMMON_OVERRIDES)
        params.update(self.defaults)
        for key, value in (overrides or {}).items():
            if key not in params:
                raise InputError(
                    f"scenario {self.name} accepts overrides {sorted(params)}, got '{key}'",
                    field="overrides",
                )
            params[key] = value
        return params

    def info(self) -> ScenarioInfo:
        params = self.resolve()
        return ScenarioInfo(
            name=self.name,
            product=self.product_spec(params),
            expected_verdict=self.expected_verdict(params),
            anchor=self.anchor,
            defaults=dict(self.defaults),
        )

    def run(self, overrides: Dict[str, Any] = None) -> ScenarioReport:
        """
        Classify the scenario target and compare against the oracle.

        Args:
            overrides: Size, tolerance or seed values replacing the defaults

        Returns:
            ScenarioReport whose ``passed`` is True when every check holds
        """
        params = self.resolve(overrides)
        cfg = AlsConfig(starts=int(params["starts"]), seed=int(params["seed"]))
        tolerances = Tolerances(tol_fact=float(params["tol_fact"]), tol_ent=float(params["tol_ent"]))

        product, target = self.build(params)
        report = classify(product, target, cfg, tolerances)
        checks, extra = self.evaluate(params, report, cfg, tolerances)
        checks.insert(0, Check("verdict", report.verdict.value, self.expected_verdict(params)))

        result = ScenarioReport(
            name=self.name,
            params=params,
            report=report,
            checks=checks,
            extra_reports=extra,
            anchor=self.anchor,
        )
        if result.passed:
            logger.info(f"scenario {self.name}: pass")
        else:
            logger.error(f"scenario {self.name}: failed checks {result.failed_checks}")
        return result
