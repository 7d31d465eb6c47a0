import sys

from app.app import main


def run() -> int:
    """
    Runs the command line and returns its exit status.

    Returns:
        int: The exit status code.
    """
    return main(sys.argv[1:])


if __name__ == '__main__':
    sys.exit(run())
