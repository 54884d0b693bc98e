{[] ~> Ok <= a3, a3 <= a2 -> a4}
