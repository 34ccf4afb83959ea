from controller.command import CommandManager
from util.errors import ConfigError, ScarLadderError
from util.settings import VERSION, Settings
from util.state_manager import Command, ExitCode, ImbalanceKind, Method
from view.base_view import BaseView
from view.csv_view import CsvView
from view.sidecar_view import SidecarView
from view.terminal_view import TerminalView
import argparse, logging, sys

logger = logging.getLogger(__name__)

class ArgumentParser(argparse.ArgumentParser):
    """Argument parser that reports errors as ConfigError instead of exiting."""

    def error(self, message: str):
        raise ConfigError(message)

def imbalance_list(text: str) -> list[ImbalanceKind]:
    try:
        return [ImbalanceKind(part) for part in text.split(",") if part]
    except ValueError as error:
        raise argparse.ArgumentTypeError(f"unknown imbalance in {text!r}") from error

def build_parser() -> ArgumentParser:
    """
    The command line. Every flag defaults to None so that only given flags override the config file.

    :rtype: ArgumentParser
    """
    parser = ArgumentParser(prog="scarladder", description="Exact diagonalization and quenches of the "
                                                            "staggered-detuning constrained ladder and chain.")
    parser.add_argument("command", choices=[command.value for command in Command])
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    parser.add_argument("--config", help="JSON file with settings")
    parser.add_argument("--legs", type=int, help="1 for the chain, 2 for the ladder")
    parser.add_argument("--L", dest="L", type=int, help="number of rungs")
    parser.add_argument("--delta", help="detuning, a number or start:stop:step")
    parser.add_argument("--w", type=float, help="coupling")
    parser.add_argument("--init", help="comma separated initial states")
    parser.add_argument("--imbalances", type=imbalance_list, help="comma separated imbalances")
    parser.add_argument("--tmax", dest="t_max", type=float, help="final time")
    parser.add_argument("--dt", type=float, help="integrator step")
    parser.add_argument("--stride", type=float, help="output time stride")
    parser.add_argument("--method", choices=[method.value for method in Method])
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--cache", help="eigensystem cache directory")
    parser.add_argument("--threads", type=int, help="worker threads")
    parser.add_argument("--k", type=int, help="momentum sector of the two-rung translation")
    parser.add_argument("--overlaps", help="comma separated states whose overlap is recorded")
    parser.add_argument("--entanglement", action="store_const", const=True, help="record entanglement entropies")
    parser.add_argument("--record-imbalances", dest="record_imbalances", action="store_const", const=True,
                        help="record the imbalance expectations along quenches")
    parser.add_argument("--export-basis", dest="export_basis", action="store_const", const=True)
    parser.add_argument("--dump-operator", dest="dump_operator", action="store_const", const=True)
    parser.add_argument("--r-grid", dest="r_grid", help="plaquette r grid, start:stop:step")
    parser.add_argument("--cap", type=int, help="largest dimension for dense diagonalization")
    parser.add_argument("--tol-zero", dest="tol_zero", type=float, help="zero-mode threshold")
    parser.add_argument("--prominence", type=float, help="peak prominence for revival detection")
    parser.add_argument("--members", type=int, help="scar tower member count")
    parser.add_argument("--min-contrast", dest="min_contrast", type=float, help="tower weight contrast")
    parser.add_argument("-v", "--verbose", action="count", default=None)
    return parser

class RunController:
    """Parses the command line, resolves the settings and runs one command against the views."""

    def __init__(self, argv: list[str]) -> None:
        """
        :param argv: Arguments without the program name.
        :type argv: list[str]
        """
        self.__argv: list[str] = list(argv)
        self.__settings: Settings | None = None
        self.__views: list[BaseView] = []

    def get_settings(self) -> Settings | None:
        return self.__settings

    def get_views(self) -> list[BaseView]:
        return self.__views

    def parse(self) -> Settings:
        """
        :raises ConfigError: On invalid flags or settings.
        :rtype: Settings
        """
        flags = vars(build_parser().parse_args(self.__argv))
        config = flags.pop("config")
        return Settings.resolve(flags, config)

    @staticmethod
    def configure_logging(verbose: int) -> None:
        level = logging.WARNING if verbose <= 0 else logging.INFO if verbose == 1 else logging.DEBUG
        logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")

    def run(self) -> int:
        """
        Run the command.

        :return: The process exit code.
        :rtype: int
        """
        try:
            self.__settings = self.parse()
            RunController.configure_logging(self.__settings.verbose)
            self.__views = [CsvView(self), SidecarView(self), TerminalView(self)]
            command = CommandManager.command_factory(self.__settings.command, self.__settings)
            logger.info("running %s, config hash %s", self.__settings.command.value, self.__settings.config_hash())
            command.run_command(self.__settings, self.__views)
        except ScarLadderError as error:
            print(error.one_line(), file=sys.stderr)
            return error.exit_code.value
        return ExitCode.OK.value
