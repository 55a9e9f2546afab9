import sys

from qrcensus.cli import main

if __name__ == "__main__":
    sys.exit(main())
