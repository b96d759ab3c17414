import sys

from ppjoin.cli import main

sys.exit(main())
