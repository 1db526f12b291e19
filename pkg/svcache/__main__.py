# Copyright (c) SVCache Authors. Licensed under the MIT License.

import sys

from svcache.cli import main

sys.exit(main())
