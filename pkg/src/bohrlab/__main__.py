import sys

from bohrlab.cli import main

sys.exit(main())
