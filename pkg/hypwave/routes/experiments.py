from fastapi import APIRouter

from hypwave.schemas.api_schema import ExperimentRequest
from hypwave.services.harness import EXPERIMENTS, experiment_parameters, run_experiment

router = APIRouter()


@router.get("")
def list_experiments():
    return {name: experiment_parameters(name) for name in sorted(EXPERIMENTS)}


@router.post("/{name}")
def start_experiment(name: str, request: ExperimentRequest):
    # Runs synchronously; parameters should keep the run at desk scale
    report = run_experiment(name, request.parameters)
    return report.model_dump(mode="json", by_alias=True)
