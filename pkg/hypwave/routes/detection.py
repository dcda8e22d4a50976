from fastapi import APIRouter

from hypwave.schemas.api_schema import DetectRequest, DetectResponse
from hypwave.schemas.wavelet_schema import WaveletSpec
from hypwave.services.estimate import detect_anisotropy
from hypwave.services.hyperwavelet import forward

router = APIRouter()


@router.post("/detect", response_model=DetectResponse)
def detect(request: DetectRequest):
    coefficients = forward(request.field.to_field(), WaveletSpec.builtin(request.wavelet))
    result = detect_anisotropy(
        coefficients,
        p=request.p,
        alpha_step=request.alpha_step,
        j_min=request.j_min,
        j_max=request.j_max,
    )
    return DetectResponse(result=result)
