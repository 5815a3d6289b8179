"""Secondary Hochschild cochain operad and chain comp-module, exactly."""
