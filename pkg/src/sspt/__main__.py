import sys

from sspt.cli import main

sys.exit(main())
