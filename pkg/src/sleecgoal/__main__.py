import sys

from sleecgoal.cli import main

sys.exit(main())
