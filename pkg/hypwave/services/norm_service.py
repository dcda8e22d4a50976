import logging
import math
import re
from typing import Dict, Tuple

from hypwave.exceptions import ParameterError
from hypwave.schemas.norm_schema import as_anisotropy, make_params
from hypwave.services import lp_bands
from hypwave.services.field_core import SampledField, lp_norm
from hypwave.services.hyperwavelet import CoefficientField
from hypwave.services.seqspaces import btilde_norm, ftilde_norm

logger = logging.getLogger(__name__)

# space -> (scale, flavor, weight mode); W is the Fourier multiplier norm, Wt and SrW are F with q = 2
FIELD_SPACES: Dict[str, Tuple[str, str, str]] = {
    "B": ("B", "classical", "aniso-sup"),
    "F": ("F", "classical", "aniso-sup"),
    "W": ("multiplier", "classical", "aniso-sup"),
    "Bt": ("B", "hyperbolic", "aniso-sup"),
    "Ft": ("F", "hyperbolic", "aniso-sup"),
    "Wt": ("W", "hyperbolic", "aniso-sup"),
    "SrB": ("B", "hyperbolic", "mixed"),
    "SrF": ("F", "hyperbolic", "mixed"),
    "SrW": ("W", "hyperbolic", "mixed"),
}

SEQUENCE_SPACES: Dict[str, Tuple[str, str]] = {
    "bt": ("B", "aniso-sup"),
    "ft": ("F", "aniso-sup"),
    "srbt": ("B", "mixed"),
    "srft": ("F", "mixed"),
}

_LEBESGUE = re.compile(r"^L(p|inf|\d+(\.\d+)?)$")


def parse_exponent(value) -> float:
    """Accept numbers and the strings 'inf' / 'infinity' for p and q."""
    if isinstance(value, str):
        if value.strip().lower() in ("inf", "infinity"):
            return math.inf
        try:
            return float(value)
        except ValueError:
            raise ParameterError(f"not a number: {value!r}") from None
    return float(value)


class NormService:
    @staticmethod
    def spaces() -> Dict[str, list]:
        return {"field": sorted(FIELD_SPACES) + ["Lp", "L<p>", "Linf"], "sequence": sorted(SEQUENCE_SPACES)}

    @staticmethod
    def evaluate(
        f: SampledField,
        space: str,
        s: float = 0.0,
        p: float = 2.0,
        q: float = 2.0,
        alpha=None,
        r: float = 0.0,
    ) -> dict:
        """Norm of a field in a named space, with the spectral truncation flag."""
        match = _LEBESGUE.match(space)
        if match:
            exponent = p if match.group(1) == "p" else parse_exponent(match.group(1))
            return {"space": space, "norm": lp_norm(f, exponent), "truncated": False}
        if space not in FIELD_SPACES:
            raise ParameterError(f"unknown space {space!r}; choose from {NormService.spaces()['field']}")
        scale, flavor, mode = FIELD_SPACES[space]
        if scale == "multiplier":
            value = lp_bands.sobolev_multiplier_norm(f, s, as_anisotropy(alpha, f.grid.d), p)
            logger.info("%s norm (s=%g, p=%g) = %.6g", space, s, p, value)
            return {"space": space, "norm": value, "truncated": False}
        if scale == "W":
            if not 1.0 < p < math.inf:
                raise ParameterError(f"{space} needs 1 < p < inf, got p={p}")
            q = 2.0
        params = make_params(s=s, p=p, q=q, alpha=alpha, d=f.grid.d, weight_mode=mode, r=r)
        truncated = lp_bands.truncation_flag(f, flavor, params.alpha if flavor == "classical" else None)
        if scale == "B":
            value = lp_bands.besov_norm(f, params, flavor)
        else:
            value = lp_bands.triebel_norm(f, params, flavor)
        logger.info("%s norm (s=%g, p=%g, q=%g) = %.6g", space, s, p, q, value)
        return {"space": space, "norm": value, "truncated": truncated}

    @staticmethod
    def sequence(
        c: CoefficientField,
        space: str,
        s: float = 0.0,
        p: float = 2.0,
        q: float = 2.0,
        alpha=None,
        r: float = 0.0,
    ) -> dict:
        if space not in SEQUENCE_SPACES:
            raise ParameterError(f"unknown sequence space {space!r}; choose from {sorted(SEQUENCE_SPACES)}")
        scale, mode = SEQUENCE_SPACES[space]
        params = make_params(s=s, p=p, q=q, alpha=alpha, d=c.grid.d, weight_mode=mode, r=r)
        value = btilde_norm(c, params) if scale == "B" else ftilde_norm(c, params)
        return {"space": space, "norm": value, "wavelet": c.spec.name}

