import os
import typing
if typing.TYPE_CHECKING:
    from controller.run_controller import RunController

class Artifact:
    """One output of a command: a table (header and rows) or plain text lines, plus its diagnostics."""

    def __init__(self, name: str, header: list[str] | None = None, rows: list[list] | None = None,
                 lines: list[str] | None = None, diagnostics: dict | None = None):
        """
        :param name: File name, with extension.
        :type name: str
        :param header: Column names of a table.
        :type header: list[str] | None
        :param rows: Table rows.
        :type rows: list[list] | None
        :param lines: Text lines, for non-tabular outputs.
        :type lines: list[str] | None
        :param diagnostics: Written to the sidecar.
        :type diagnostics: dict | None
        """
        self.__name: str = name
        self.__header: list[str] | None = header
        self.__rows: list[list] = list(rows or [])
        self.__lines: list[str] | None = lines
        self.__diagnostics: dict = dict(diagnostics or {})

    def get_name(self) -> str:
        return self.__name

    def get_stem(self) -> str:
        return os.path.splitext(self.__name)[0]

    def get_header(self) -> list[str] | None:
        return self.__header

    def get_rows(self) -> list[list]:
        return self.__rows

    def get_lines(self) -> list[str] | None:
        return self.__lines

    def is_table(self) -> bool:
        return self.__header is not None

    def get_diagnostics(self) -> dict:
        return self.__diagnostics

    def __repr__(self) -> str:
        return f"Artifact({self.__name}, rows={len(self.__rows)})"

class BaseView:
    """
    Interface for the outputs of a run.
    """

    def __init__(self, controller: 'RunController') -> None:
        self.__controller = controller

    def get_controller(self) -> 'RunController':
        return self.__controller

    def output_path(self, name: str) -> str:
        """
        Path of a file in the output directory, which is created on demand.

        :rtype: str
        """
        directory = self.__controller.get_settings().out
        os.makedirs(directory, exist_ok=True)
        return os.path.join(directory, name)

    def message(self, text: str) -> None:
        """Summary line; ignored by views that only write files."""

    def show(self, artifact: Artifact) -> None:
        raise NotImplementedError("This method should be overriden by the subclass")
