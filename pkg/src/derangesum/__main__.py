import sys

from derangesum.cli import main

sys.exit(main())
