"""
Coefficient laws for trdiff materials.

Defines:
- PowerLaw: k = A * T^p (constant when p = 0), also used for exchange coefficients
- EnergyLaw: W = c * T (linear) or W = c * T^4 (quartic radiation law)
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field


class PowerLaw(BaseModel):
    """
    Coefficient law value = coefficient * T^exponent.

    Exchange laws fold rho^2 into the coefficient and take T_e as argument.
    """
    model_config = ConfigDict(frozen=True)

    coefficient: float = Field(..., gt=0, description="Leading constant A")
    exponent: float = Field(0.0, description="Power of the temperature argument")

    @property
    def is_constant(self) -> bool:
        return self.exponent == 0.0

    def __call__(self, temperature):
        if self.is_constant:
            return self.coefficient * np.ones_like(np.asarray(temperature, dtype=float))
        return self.coefficient * np.power(temperature, self.exponent)

    def derivative(self, temperature):
        """d(value)/dT."""
        if self.is_constant:
            return np.zeros_like(np.asarray(temperature, dtype=float))
        return self.coefficient * self.exponent * np.power(temperature, self.exponent - 1.0)


class EnergyLaw(BaseModel):
    """Energy density as a function of temperature."""
    model_config = ConfigDict(frozen=True)

    coefficient: float = Field(..., gt=0, description="Volumetric heat capacity c, or c_vr for the quartic law")
    power: Literal[1, 4] = Field(1, description="1 for W = c*T, 4 for W = c*T^4")

    def energy(self, temperature):
        if self.power == 1:
            return self.coefficient * np.asarray(temperature, dtype=float)
        t2 = np.square(temperature)
        return self.coefficient * t2 * t2

    def temperature(self, energy):
        if self.power == 1:
            return np.asarray(energy, dtype=float) / self.coefficient
        return np.sqrt(np.sqrt(np.asarray(energy, dtype=float) / self.coefficient))

    def heat_capacity(self, temperature):
        """dW/dT."""
        if self.power == 1:
            return self.coefficient * np.ones_like(np.asarray(temperature, dtype=float))
        return 4.0 * self.coefficient * np.power(temperature, 3)
