#
# Copyright (c) 2024  StorPool.
# All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
""" Certification of highest weight structures on module categories of
finite dimensional path algebras.

See the hwcert.hwweight module for the highest weight constructions and
the hwcert.hwcli module for the command-line tool.
"""

VERSION = '1.0.0'
