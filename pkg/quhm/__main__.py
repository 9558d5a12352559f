import sys

from quhm.cli import main

sys.exit(main())
