import os
import sys


def main():
    os.environ.setdefault("GROSSCA_OUTPUT_BASE", os.path.join(os.path.expanduser("~"), ".grossca", "output"))
    from grossca.cli import run
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
