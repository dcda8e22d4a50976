from fastapi import APIRouter

from hypwave.schemas.api_schema import AdmissibilityRequest, NormRequest, NormResponse
from hypwave.schemas.norm_schema import make_params
from hypwave.schemas.wavelet_schema import AdmissibilityReport, WaveletSpec
from hypwave.services.hyperwavelet import admissibility_check
from hypwave.services.norm_service import NormService

router = APIRouter()


@router.post("/norms", response_model=NormResponse)
def compute_norm(request: NormRequest):
    result = NormService.evaluate(
        request.field.to_field(),
        request.space,
        s=request.s,
        p=request.p,
        q=request.q,
        alpha=request.alpha,
        r=request.r,
    )
    return NormResponse(**result)


@router.post("/admissibility", response_model=AdmissibilityReport)
def check_admissibility(request: AdmissibilityRequest):
    params = make_params(s=request.s, p=request.p, q=request.q, alpha=request.alpha, d=request.d)
    return admissibility_check(
        WaveletSpec.builtin(request.wavelet), params, request.characterization, request.scale
    )
