import sys

from sqconc.cli import main

sys.exit(main())
