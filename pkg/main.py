from controller.run_controller import RunController
import sys

if __name__ == "__main__":
    sys.exit(RunController(sys.argv[1:]).run())
