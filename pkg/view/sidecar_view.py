from util.settings import VERSION
from view.base_view import Artifact, BaseView
import json
import logging
import numpy as np
import scipy

logger = logging.getLogger(__name__)

def plain(value):
    """
    Convert numpy scalars and arrays, enums and tuples into JSON-ready values.
    """
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.generic):
        return value.item()
    if hasattr(value, "value") and not isinstance(value, (int, float, str)):
        return value.value
    if isinstance(value, float) and not np.isfinite(value):
        return str(value)
    return value

class SidecarView(BaseView):
    """Writes the JSON provenance sidecar <stem>.json of every artifact. No wall-clock content."""

    def provenance(self, artifact: Artifact) -> dict:
        settings = self.get_controller().get_settings()
        return {
            "file": artifact.get_name(),
            "command": settings.command.value,
            "settings": settings.to_dict(),
            "config_hash": settings.config_hash(),
            "tolerances": {"tol_zero": settings.tol_zero, "drift_budget": settings.drift_budget,
                           "prominence": settings.prominence},
            "versions": {"scarladder": VERSION, "numpy": np.__version__, "scipy": scipy.__version__},
            "diagnostics": artifact.get_diagnostics(),
        }

    def show(self, artifact: Artifact) -> None:
        path = self.output_path(f"{artifact.get_stem()}.json")
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(plain(self.provenance(artifact)), handle, indent=2, sort_keys=True)
            handle.write("\n")
        logger.info("wrote %s", path)
