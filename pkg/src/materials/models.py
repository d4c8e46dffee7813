"""
Material models for trdiff.

A MaterialModel holds, per region, the conductivity law of each species, the
two exchange laws (ei, er) and the energy law of each species. Laws are
gathered into coefficient tables indexed [region, species] so whole fields can
be evaluated without Python loops over cells.

Built-in models:
- linear-mms: single region, k = c = omega = 1 (manufactured-solution test)
- model2d: two regions split at y = 250, constant coefficients
- icf: three regions (DT gas, glass, foam), power laws, quartic radiation energy
- custom: single region, ICF law shapes with user constants
"""

from typing import Callable, Dict, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from src.grid.fields import SPECIES, SPECIES_LABELS
from src.materials.laws import EnergyLaw, PowerLaw
from src.utils.errors import ConfigurationError, PositivityError
from src.utils.logger import LoggerMixin, get_logger

logger = get_logger(__name__)

PAIRS = ("ei", "er")

RegionClassifier = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


def _first_bad(bad: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(i) for i in np.argwhere(bad)[0])


class MaterialModel(LoggerMixin):
    """
    Per-region coefficient laws and energy/temperature maps.

    Args:
        name: Model name
        conductivity: [region][species] conductivity laws
        exchange: [region][pair] exchange laws of T_e (pair 0 = ei, 1 = er)
        energy: [region][species] energy laws
        classifier: Vectorized (x, y, z) -> region id
        region_names: Display names per region
    """

    def __init__(
        self,
        name: str,
        conductivity: Sequence[Sequence[PowerLaw]],
        exchange: Sequence[Sequence[PowerLaw]],
        energy: Sequence[Sequence[EnergyLaw]],
        classifier: Optional[RegionClassifier] = None,
        region_names: Optional[Sequence[str]] = None
    ):
        n_regions = len(conductivity)
        if n_regions == 0 or len(exchange) != n_regions or len(energy) != n_regions:
            raise ConfigurationError(f"Material model '{name}' has inconsistent region tables")

        self.name = name
        self.n_regions = n_regions
        self.conductivity_laws = tuple(tuple(row) for row in conductivity)
        self.exchange_laws = tuple(tuple(row) for row in exchange)
        self.energy_laws = tuple(tuple(row) for row in energy)
        self.region_names = tuple(region_names) if region_names else tuple(
            f"region{r}" for r in range(n_regions)
        )
        self._classifier = classifier

        self._k_coef = np.array([[law.coefficient for law in row] for row in self.conductivity_laws])
        self._k_exp = np.array([[law.exponent for law in row] for row in self.conductivity_laws])
        self._w_coef = np.array([[law.coefficient for law in row] for row in self.exchange_laws])
        self._w_exp = np.array([[law.exponent for law in row] for row in self.exchange_laws])
        self._c_coef = np.array([[law.coefficient for law in row] for row in self.energy_laws])
        self._c_pow = np.array([[law.power for law in row] for row in self.energy_laws], dtype=float)

        for table, label in ((self._k_coef, "conductivity"), (self._w_coef, "exchange"),
                             (self._c_coef, "energy")):
            if table.shape[1] != (2 if label == "exchange" else 3):
                raise ConfigurationError(f"Material model '{name}' has a malformed {label} table")

    # ------------------------------------------------------------------
    # Regions
    # ------------------------------------------------------------------

    def classify(self, x, y, z) -> np.ndarray:
        """Region ids at points (vectorized)."""
        if self._classifier is None:
            return np.zeros(np.broadcast(x, y, z).shape, dtype=np.int64)
        return np.asarray(self._classifier(x, y, z), dtype=np.int64)

    def region_of(self, point: Sequence[float]) -> int:
        """Region id of a single point."""
        x, y, z = (np.asarray(c, dtype=float) for c in point)
        return int(self.classify(x, y, z))

    @property
    def classifier(self) -> Optional[RegionClassifier]:
        return self._classifier

    @property
    def is_linear(self) -> bool:
        """True if every energy law is linear."""
        return bool(np.all(self._c_pow == 1.0))

    @property
    def has_constant_coefficients(self) -> bool:
        return bool(np.all(self._k_exp == 0.0) and np.all(self._w_exp == 0.0))

    # ------------------------------------------------------------------
    # Positivity
    # ------------------------------------------------------------------

    @staticmethod
    def _require_positive(values, exponents, quantity: str, label: str, where: str) -> None:
        needs = np.asarray(exponents) != 0.0
        bad = needs & ~(np.asarray(values) > 0.0)
        if np.any(bad):
            index = _first_bad(bad)
            value = np.asarray(values)[index] if np.ndim(values) else float(values)
            raise PositivityError(
                f"Non-positive {quantity} {label}={value!r} at {where} {index} "
                f"requires a positive argument"
            )

    # ------------------------------------------------------------------
    # Scalar / broadcast evaluation for one species or pair
    # ------------------------------------------------------------------

    def conductivity(self, region, species: int, temperature, where: str = "cell"):
        """k_species(T) for the given region(s)."""
        region = np.asarray(region, dtype=np.int64)
        coef = self._k_coef[region, species]
        exp = self._k_exp[region, species]
        T = np.asarray(temperature, dtype=float)
        shape = np.broadcast(T, exp).shape
        self._require_positive(np.broadcast_to(T, shape), np.broadcast_to(exp, shape),
                               "temperature", SPECIES_LABELS[species], where)
        with np.errstate(invalid="ignore", divide="ignore"):
            return coef * np.where(exp == 0.0, 1.0, np.power(np.abs(T), exp))

    def exchange_coeff(self, region, pair: int, t_electron, where: str = "cell"):
        """omega_pair(T_e) for the given region(s)."""
        region = np.asarray(region, dtype=np.int64)
        coef = self._w_coef[region, pair]
        exp = self._w_exp[region, pair]
        T = np.asarray(t_electron, dtype=float)
        shape = np.broadcast(T, exp).shape
        self._require_positive(np.broadcast_to(T, shape), np.broadcast_to(exp, shape),
                               "temperature", "Te", where)
        with np.errstate(invalid="ignore", divide="ignore"):
            return coef * np.where(exp == 0.0, 1.0, np.power(np.abs(T), exp))

    def exchange_derivative(self, region, pair: int, t_electron, where: str = "cell"):
        """d(omega_pair)/dT_e."""
        region = np.asarray(region, dtype=np.int64)
        coef = self._w_coef[region, pair]
        exp = self._w_exp[region, pair]
        T = np.asarray(t_electron, dtype=float)
        shape = np.broadcast(T, exp).shape
        self._require_positive(np.broadcast_to(T, shape), np.broadcast_to(exp, shape),
                               "temperature", "Te", where)
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.where(exp == 0.0, 0.0, coef * exp * np.power(np.abs(T), exp - 1.0))

    def energy_from_temperature(self, region, species: int, temperature):
        region = np.asarray(region, dtype=np.int64)
        coef = self._c_coef[region, species]
        power = self._c_pow[region, species]
        T = np.asarray(temperature, dtype=float)
        t2 = T * T
        return coef * np.where(power == 4.0, t2 * t2, T)

    def temperature_from_energy(self, region, species: int, energy, where: str = "cell"):
        region = np.asarray(region, dtype=np.int64)
        coef = self._c_coef[region, species]
        power = self._c_pow[region, species]
        W = np.asarray(energy, dtype=float)
        shape = np.broadcast(W, power).shape
        quartic = np.broadcast_to(power == 4.0, shape)
        self._require_positive(np.broadcast_to(W, shape), quartic.astype(float),
                               "energy", f"W{SPECIES[species]}", where)
        ratio = W / coef
        with np.errstate(invalid="ignore"):
            return np.where(quartic, np.sqrt(np.sqrt(np.abs(ratio))), ratio)

    def heat_capacity(self, region, species: int, temperature):
        """dW/dT."""
        region = np.asarray(region, dtype=np.int64)
        coef = self._c_coef[region, species]
        power = self._c_pow[region, species]
        T = np.asarray(temperature, dtype=float)
        return coef * np.where(power == 4.0, 4.0 * T * T * T, 1.0)

    # ------------------------------------------------------------------
    # Whole-field evaluation, fields shaped (3, ...) with region ids (...)
    # ------------------------------------------------------------------

    def conductivity_field(self, region_ids: np.ndarray, temperature: np.ndarray,
                           where: str = "cell") -> np.ndarray:
        return np.stack([
            self.conductivity(region_ids, s, temperature[s], where) for s in range(3)
        ])

    def energy_field(self, region_ids: np.ndarray, temperature: np.ndarray) -> np.ndarray:
        return np.stack([
            self.energy_from_temperature(region_ids, s, temperature[s]) for s in range(3)
        ])

    def temperature_field(self, region_ids: np.ndarray, energy: np.ndarray,
                          where: str = "cell") -> np.ndarray:
        return np.stack([
            self.temperature_from_energy(region_ids, s, energy[s], where) for s in range(3)
        ])

    def heat_capacity_field(self, region_ids: np.ndarray, temperature: np.ndarray) -> np.ndarray:
        return np.stack([
            self.heat_capacity(region_ids, s, temperature[s]) for s in range(3)
        ])

    def describe(self) -> Dict[str, str]:
        """Flat summary of the law tables, used in reports."""
        summary = {"material.name": self.name, "material.regions": ",".join(self.region_names)}
        for r, region in enumerate(self.region_names):
            for s, label in enumerate(SPECIES):
                law = self.conductivity_laws[r][s]
                summary[f"material.{region}.k_{label}"] = f"{law.coefficient!r}*T^{law.exponent!r}"
                energy = self.energy_laws[r][s]
                summary[f"material.{region}.c_{label}"] = f"{energy.coefficient!r}*T^{energy.power}"
            for p, pair in enumerate(PAIRS):
                law = self.exchange_laws[r][p]
                summary[f"material.{region}.w_{pair}"] = f"{law.coefficient!r}*Te^{law.exponent!r}"
        return summary


# ----------------------------------------------------------------------
# Built-in models
# ----------------------------------------------------------------------

def _const(value: float) -> PowerLaw:
    return PowerLaw(coefficient=value, exponent=0.0)


def linear_mms_model() -> MaterialModel:
    """Fully linear model W = T, k = 1, omega = 1."""
    one = _const(1.0)
    return MaterialModel(
        name="linear-mms",
        conductivity=[[one, one, one]],
        exchange=[[one, one]],
        energy=[[EnergyLaw(coefficient=1.0)] * 3],
        region_names=["all"]
    )


MODEL2D_INTERFACE_Y = 250.0


def model2d_classifier(x, y, z) -> np.ndarray:
    """Region A (0) below y = 250, region B (1) above."""
    _, y, _ = np.broadcast_arrays(x, y, z)
    return np.where(y >= MODEL2D_INTERFACE_Y, 1, 0)


def model2d_model() -> MaterialModel:
    """Two-material model with constant coefficients."""
    a_energy = EnergyLaw(coefficient=0.05)
    b_energy = EnergyLaw(coefficient=1.0)
    exchange = [_const(10.0), _const(100.0)]
    return MaterialModel(
        name="model2d",
        conductivity=[
            [_const(10.0), _const(10.0), _const(100.0)],
            [_const(10.0), _const(10.0), _const(10.0)],
        ],
        exchange=[exchange, exchange],
        energy=[[a_energy] * 3, [b_energy] * 3],
        classifier=model2d_classifier,
        region_names=["A", "B"]
    )


class ICFRegionConstants(BaseModel):
    """Constants of one region with ICF law shapes."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    rho: float = Field(..., gt=0, description="Density")
    gamma_e: float = Field(..., gt=0)
    gamma_i: float = Field(..., gt=0)
    gamma_r: float = Field(0.007568, gt=0)
    a_e: float = Field(..., gt=0)
    a_i: float = Field(..., gt=0)
    a_r: float = Field(..., gt=0)
    beta: float = Field(..., ge=0)
    a_ei: float = Field(..., gt=0)
    a_er: float = Field(..., gt=0)

    def laws(self) -> Tuple[list, list, list]:
        """(conductivity, exchange, energy) law rows for this region."""
        conductivity = [
            PowerLaw(coefficient=self.a_e, exponent=2.5),
            PowerLaw(coefficient=self.a_i, exponent=2.5),
            PowerLaw(coefficient=self.a_r, exponent=self.beta + 3.0),
        ]
        rho2 = self.rho * self.rho
        exchange = [
            PowerLaw(coefficient=rho2 * self.a_ei, exponent=-2.0 / 3.0),
            PowerLaw(coefficient=rho2 * self.a_er, exponent=-0.5),
        ]
        energy = [
            EnergyLaw(coefficient=self.rho * 1.5 * self.gamma_e, power=1),
            EnergyLaw(coefficient=self.rho * 1.5 * self.gamma_i, power=1),
            EnergyLaw(coefficient=self.gamma_r, power=4),
        ]
        return conductivity, exchange, energy


ICF_INNER = 85.0
ICF_OUTER = 95.0

ICF_REGIONS = (
    ICFRegionConstants(rho=0.09, gamma_e=35.0, gamma_i=35.0, a_e=200.0, a_i=5.0,
                       a_r=1.8e7 / 0.09, beta=1.0, a_ei=2000.0, a_er=10.0),
    ICFRegionConstants(rho=2.5, gamma_e=40.0, gamma_i=40.0, a_e=60.0, a_i=1.7e-4,
                       a_r=9e2 / 2.5 ** 1.5, beta=2.4, a_ei=4000.0, a_er=140.0),
    ICFRegionConstants(rho=1.1, gamma_e=45.0, gamma_i=70.0, a_e=81.0, a_i=2e-2,
                       a_r=2.1e3 / 1.1 ** 2, beta=3.0, a_ei=7000.0, a_er=79.0),
)


def icf_classifier(x, y, z) -> np.ndarray:
    """Omega_1 (0) inner gas, Omega_3 (2) outer foam, Omega_2 (1) glass shell."""
    ax, y, z = np.abs(np.asarray(x, dtype=float)), np.asarray(y, dtype=float), np.asarray(z, dtype=float)
    inner = (ax <= ICF_INNER) & (y <= ICF_INNER) & (z <= ICF_INNER)
    outer = (ax >= ICF_OUTER) | (y >= ICF_OUTER) | (z >= ICF_OUTER)
    return np.where(inner, 0, np.where(outer, 2, 1))


def _from_constants(name: str, regions: Sequence[ICFRegionConstants],
                    classifier: Optional[RegionClassifier], region_names: Sequence[str]) -> MaterialModel:
    conductivity, exchange, energy = [], [], []
    for constants in regions:
        k, w, c = constants.laws()
        conductivity.append(k)
        exchange.append(w)
        energy.append(c)
    return MaterialModel(name, conductivity, exchange, energy, classifier, region_names)


def icf_model() -> MaterialModel:
    """Three-region ICF capsule model."""
    return _from_constants("icf", ICF_REGIONS, icf_classifier, ["omega1", "omega2", "omega3"])


def custom_model(constants: ICFRegionConstants) -> MaterialModel:
    """Single-region model with ICF law shapes and user constants."""
    return _from_constants("custom", [constants], None, ["all"])


BUILTIN_MODELS: Dict[str, Callable[[], MaterialModel]] = {
    "linear-mms": linear_mms_model,
    "model2d": model2d_model,
    "icf": icf_model,
}


def get_material_model(name: str, constants: Optional[ICFRegionConstants] = None) -> MaterialModel:
    """
    Resolve a material model by name.

    Args:
        name: One of the built-in names or 'custom'
        constants: Required for 'custom'

    Returns:
        MaterialModel
    """
    if name == "custom":
        if constants is None:
            raise ConfigurationError("Material model 'custom' needs material constants")
        return custom_model(constants)
    if name not in BUILTIN_MODELS:
        raise ConfigurationError(
            f"Unknown material model '{name}'. Available: {sorted(BUILTIN_MODELS) + ['custom']}"
        )
    logger.debug(f"Using built-in material model {name}")
    return BUILTIN_MODELS[name]()
