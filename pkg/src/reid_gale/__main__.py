"""`reid-gale` console script and `python -m reid_gale`.

Runs the analyze / matrix / validate-fan CLI and exits with its status
(0 ok, 1 bad input or failed computation, 2 strict-mode failures).
"""

import sys

from reid_gale.app import run


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
