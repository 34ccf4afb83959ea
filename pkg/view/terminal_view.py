from view.base_view import Artifact, BaseView
from blessed import Terminal
import typing
if typing.TYPE_CHECKING:
    from controller.run_controller import RunController

class TerminalView(BaseView):
    """
    One-line summaries on stdout. Styling is dropped when stdout is not a terminal, so the lines stay stable
    for scripts.
    """

    def __init__(self, controller: 'RunController') -> None:
        super().__init__(controller)
        self.__terminal = Terminal()

    def get_terminal(self) -> Terminal:
        return self.__terminal

    def message(self, text: str) -> None:
        print(self.__terminal.bold(text), flush=True)

    def show(self, artifact: Artifact) -> None:
        directory = self.get_controller().get_settings().out
        print(self.__terminal.green(f"wrote {directory}/{artifact.get_name()}"), flush=True)
