from view.base_view import Artifact, BaseView
import csv
import logging
import numbers

logger = logging.getLogger(__name__)

def format_value(value) -> str:
    """
    Floats with 12 significant digits, integers and strings as they are.

    :rtype: str
    """
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, numbers.Integral):
        return str(int(value))
    if isinstance(value, numbers.Real):
        return format(float(value), ".12g")
    return str(value)

class CsvView(BaseView):
    """Writes tables as CSV and text artifacts as they are, into the output directory."""

    def show(self, artifact: Artifact) -> None:
        path = self.output_path(artifact.get_name())
        with open(path, "w", newline="", encoding="utf-8") as handle:
            if artifact.is_table():
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(artifact.get_header())
                writer.writerows([format_value(value) for value in row] for row in artifact.get_rows())
            else:
                handle.writelines(f"{line}\n" for line in artifact.get_lines() or [])
        logger.info("wrote %s", path)
