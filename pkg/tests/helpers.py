"""Independent oracles used by the test suite.

These re-derive the front-end responses and link budget by direct summation
from first principles, without calling the library's response code, so they
stay independent of the implementation they check.
"""

import numpy as np

SPEED_OF_LIGHT = 299_792_458.0


def oracle_element_power_gain(ula, theta_deg):
    g_peak = 10.0 ** (ula.element_peak_gain_dbi / 10.0)
    if ula.element_pattern == "isotropic":
        return g_peak
    q = np.log(0.5) / np.log(np.cos(np.radians(ula.element_hpbw_deg / 2.0)))
    return g_peak * max(np.cos(np.radians(theta_deg)), 0.0) ** q


def oracle_port_response(front, port, theta_deg):
    """Direct elementwise sum of excitation x plane-wave phase x element amplitude."""
    ula = front.ula
    n = ula.num_elements
    amp = np.sqrt(oracle_element_power_gain(ula, theta_deg))
    s = np.sin(np.radians(theta_deg))
    total = 0.0 + 0.0j
    for m in range(n):
        if front.kind == "multi_beam_butler":
            exc = np.exp(-2j * np.pi * m * (2 * port - n - 1) / (2 * n)) / np.sqrt(n)
        else:
            exc = 1.0 if m == port - 1 else 0.0
        steer = np.exp(2j * np.pi * ula.spacing_wavelengths * m * s)
        total += exc * steer
    return amp * total


def oracle_friis_db(carrier_hz, distance_m):
    return -20.0 * np.log10(4.0 * np.pi * distance_m * carrier_hz / SPEED_OF_LIGHT)
