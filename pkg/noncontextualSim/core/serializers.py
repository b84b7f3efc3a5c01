from rest_framework import serializers

SUBCOMMANDS = ['check_noncontextual', 'generators', 'model', 'solve', 'verify', 'approx', 'oracle', 'report']


class RunConfigSerializer(serializers.Serializer):
    """Serializer for the options shared by every command run"""
    subcommand = serializers.ChoiceField(choices=SUBCOMMANDS)
    input = serializers.CharField(required=False, allow_blank=False, default='-')
    seed = serializers.IntegerField(required=False, allow_null=True, min_value=0, default=None)
    exhaustive_threshold = serializers.IntegerField(required=False, allow_null=True, min_value=0, max_value=62, default=None)
    chem_accuracy = serializers.FloatField(required=False, allow_null=True, default=None)
    batch = serializers.IntegerField(required=False, min_value=1, max_value=8, default=1)
    format = serializers.ChoiceField(choices=['text', 'json'], default='text')
    workers = serializers.IntegerField(required=False, allow_null=True, min_value=1, default=None)

    def validate_chem_accuracy(self, value):
        if value is not None and value <= 0:
            raise serializers.ValidationError("Chemical accuracy must be positive")
        return value
