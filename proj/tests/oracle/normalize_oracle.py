#!/usr/bin/env python3
# Copyright 2026 The stmkg Authors.
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

"""Reference answers for text normalization.

usage: normalize_oracle.py INPUT OUTPUT

INPUT is {"words": [...], "texts": [...]}. OUTPUT receives {"lemmas": [[...]],
"acronyms": [{short: long}]}: every noun lemma the lemminflect dictionary
lemmatizer offers per word, and the abbreviation definitions the published
Schwartz-Hearst implementation finds per text.
"""

import json
import sys

import lemminflect
from abbreviations import schwartz_hearst


def main(input_path, output_path):
    with open(input_path, encoding="utf-8") as f:
        request = json.load(f)
    lemmas = [list(lemminflect.getLemma(w, upos="NOUN")) for w in request.get("words", [])]
    acronyms = [
        schwartz_hearst.extract_abbreviation_definition_pairs(doc_text=t)
        for t in request.get("texts", [])
    ]
    with open(output_path, "w", encoding="utf-8") as f:
        json.dump({"lemmas": lemmas, "acronyms": acronyms}, f, ensure_ascii=False)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
